/* tslint:disable */
/* eslint-disable */

/**
 * `pow`-fold chi of a 0/1 word of power-of-two length, for the Jacaranda system.
 */
export function chi(word: string, pow: number): string;

/**
 * Line `level` of the fixed point, as 0/1 text.
 */
export function line(system: string, root: number, level: number): string;

/**
 * Ones-proportion of lines `2^u (2n+1)` of J as `p/q`.
 */
export function ones_proportion(u: number): string;

/**
 * SVG of the disk coloring by positive words of length at most `depth`.
 */
export function tiling_svg(system: string, root: number, depth: number, res: number): string;

/**
 * SVG of the fixed point of `system` (`bbab`, `tm` or `abba`) with the given root, cut at `depth`.
 */
export function tree_svg(system: string, root: number, depth: number, width: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly chi: (a: number, b: number, c: number) => [number, number, number, number];
    readonly line: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly ones_proportion: (a: number) => [number, number];
    readonly tiling_svg: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly tree_svg: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
