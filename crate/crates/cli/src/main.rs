use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jacaranda::jacaranda::{brother, detect_type, jacaranda_prefix, XDescriptor, XKind};
use jacaranda::measures::invariant_measure;
use jacaranda::preimages::{p_n, preimage_candidates, preimages_bruteforce};
use jacaranda::render::{tiling_svg, tree_svg, RenderConfig};
use jacaranda::systems::{build_orbit_graph, nomeasure_tree, OrbitGraph};
use jacaranda::verify::{check, probes};
use jacaranda::words::{chi_pow, proportion, rational_to_string};
use jacaranda::{Address, Error, LineWord, Patch, Substitution};

#[derive(Parser)]
#[command(name = "jacaranda", version, about = "Substitutions on colored binary trees and the Jacaranda tree")]
struct Cli {
    /// Worker threads for parallel scans and rendering (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prefix of the fixed point with the given root.
    Fixpoint {
        /// `builtin:bbab`, `builtin:tm`, `builtin:abba` or a substitution file.
        #[arg(long)]
        sub: String,
        #[arg(long)]
        root: u8,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One line of a patch as a 0/1 word.
    Line {
        #[arg(long)]
        patch: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// The chi procedure on a line word.
    Chi {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1)]
        pow: u32,
        #[arg(long, default_value = "builtin:bbab")]
        sub: String,
    },
    /// Addresses whose source is the given address, one per line.
    Theta {
        #[arg(long)]
        addr: String,
        #[arg(long)]
        sub: String,
    },
    /// Source of an even-length address.
    Source {
        #[arg(long)]
        addr: String,
        #[arg(long)]
        sub: String,
    },
    /// Checks the renormalization equation on a fixed-point prefix (or on --patch).
    VerifyRenorm {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        maxlen: usize,
        #[arg(long)]
        patch: Option<PathBuf>,
    },
    /// Parity and 2^u-type of a patch of J.
    Type {
        #[arg(long)]
        patch: PathBuf,
    },
    /// Inverts the substitution `times` times.
    Unsub {
        #[arg(long)]
        patch: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[arg(long, default_value = "builtin:bbab")]
        sub: String,
    },
    /// The 1-rooted sibling forced by a 0-rooted patch.
    Brother {
        #[arg(long)]
        patch: PathBuf,
        /// Level of J the patch was read at, when known.
        #[arg(long)]
        level: Option<u64>,
    },
    /// One-step parents found in a J-prefix, or the classified set.
    Preimages {
        /// Patch file, or `J` / `J'` with --classified.
        #[arg(long)]
        patch: String,
        /// Count parents at distance n instead of listing one-step parents.
        #[arg(long)]
        n: Option<usize>,
        /// Prefix to scan; defaults to the depth-14 prefix of J.
        #[arg(long)]
        jprefix: Option<PathBuf>,
        #[arg(long)]
        classified: bool,
        /// Level of J the patch was read at, when known.
        #[arg(long)]
        level: Option<u64>,
    },
    /// p(n, A) for n = 0..max-n against the bound 3^n.
    Complexity {
        #[arg(long)]
        patch: PathBuf,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        jprefix: Option<PathBuf>,
    },
    /// Ones-proportion of lines 2^u (2n+1) of J.
    Proportion {
        #[arg(long)]
        n: u32,
    },
    /// Finite orbit graph of a periodic tree.
    OrbitGraph {
        #[arg(long, conflicts_with = "patch")]
        example: Option<String>,
        #[arg(long)]
        patch: Option<PathBuf>,
        #[arg(long)]
        depth: usize,
    },
    /// Decides whether an orbit graph carries an invariant probability measure.
    MeasureCheck {
        #[arg(long)]
        graph: PathBuf,
    },
    /// SVG picture of a patch.
    RenderTree {
        #[arg(long)]
        patch: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1024)]
        res: usize,
    },
    /// SVG coloring of the hyperbolic disk by a patch.
    RenderTiling {
        #[arg(long)]
        patch: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 512)]
        res: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs the acceptance checks and prints a table.
    VerifyPaper {
        /// Stop at the first failing check.
        #[arg(long)]
        fail_fast: bool,
    },
}

enum Failure {
    Op(Error),
    Io(String),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Op(e)
    }
}

type Out = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_patch(path: &Path) -> Result<Patch, Failure> {
    Ok(Patch::parse_text(&read(path)?)?)
}

fn substitution(spec: &str) -> Result<Substitution, Failure> {
    if spec.starts_with("builtin:") {
        return Ok(Substitution::resolve(spec)?);
    }
    Ok(Substitution::parse_text(&read(Path::new(spec))?)?)
}

fn address(s: &str) -> Result<Address, Failure> {
    Ok(s.parse()?)
}

fn jprefix(path: &Option<PathBuf>) -> Result<Patch, Failure> {
    match path {
        Some(p) => read_patch(p),
        None => Ok(jacaranda_prefix(14)),
    }
}

fn descriptor(p: Patch, level: Option<u64>) -> XDescriptor {
    XDescriptor {
        kind: XKind::Concrete(p),
        provenance: level.map(|l| Address::from_index(l as usize, 0)),
    }
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn run(cmd: Command) -> Out {
    match cmd {
        Command::Fixpoint { sub, root, depth, out } => {
            let p = substitution(&sub)?.fixed_point_prefix(root, depth)?;
            match out {
                Some(path) => {
                    write(&path, &p.to_text())?;
                    Ok(String::new())
                }
                None => Ok(p.to_text()),
            }
        }
        Command::Line { patch, level } => Ok(format!("{}\n", read_patch(&patch)?.line(level)?)),
        Command::Chi { word, pow, sub } => {
            let w: LineWord = word.parse()?;
            Ok(format!("{}\n", chi_pow(&substitution(&sub)?, &w, pow)?))
        }
        Command::Theta { addr, sub } => Ok(lines(substitution(&sub)?.theta(&address(&addr)?))),
        Command::Source { addr, sub } => Ok(format!("{}\n", substitution(&sub)?.source(&address(&addr)?)?)),
        Command::VerifyRenorm { sub, depth, maxlen, patch } => {
            let s = substitution(&sub)?;
            let p = match patch {
                Some(f) => read_patch(&f)?,
                None => {
                    let root = (0..2).find(|&c| s.is_fixable(c)).ok_or(Error::NotFixable(0))?;
                    s.fixed_point_prefix(root, depth)?
                }
            };
            let r = s.verify_renormalization(&p, maxlen);
            match r.counterexample {
                None => Ok(format!("pass checked={}\n", r.checked)),
                Some((w, lhs, rhs)) => Err(Failure::Check(format!("fail at {w}: {lhs} vs {rhs}"))),
            }
        }
        Command::Type { patch } => Ok(format!("{}\n", detect_type(&read_patch(&patch)?)?)),
        Command::Unsub { patch, times, sub } => {
            let p = read_patch(&patch)?;
            Ok(substitution(&sub)?.unsub_pow(&p, times)?.to_text())
        }
        Command::Brother { patch, level } => {
            let b = brother(&descriptor(read_patch(&patch)?, level))?;
            Ok(b.patch().map(|p| p.to_text()).unwrap_or_else(|| format!("{b}\n")))
        }
        Command::Preimages { patch, n, jprefix: jp, classified, level } => {
            if classified {
                let x = match patch.as_str() {
                    "J" => XDescriptor::jac(),
                    "J'" => XDescriptor::jac_prime(),
                    f => descriptor(read_patch(Path::new(f))?, level),
                };
                let c = preimage_candidates(&x)?;
                if !c.determined {
                    return Err(Error::Undetermined(c.cases).into());
                }
                return Ok(c.set.to_string());
            }
            let a = read_patch(Path::new(&patch))?;
            let j = jprefix(&jp)?;
            match n {
                Some(n) => Ok(format!("{}\n", p_n(&a, n, &j)?)),
                None => Ok(preimages_bruteforce(&a, &j)?.to_string()),
            }
        }
        Command::Complexity { patch, max_n, jprefix: jp } => {
            let a = read_patch(&patch)?;
            let j = jprefix(&jp)?;
            let mut out = String::from("n p 3^n\n");
            for n in 0..=max_n {
                out.push_str(&format!("{n} {} {}\n", p_n(&a, n, &j)?, 3u64.pow(n as u32)));
            }
            Ok(out)
        }
        Command::Proportion { n } => Ok(format!("{}\n", rational_to_string(&proportion(n)))),
        Command::OrbitGraph { example, patch, depth } => {
            let seed = match (example.as_deref(), patch) {
                (Some("nomeasure"), None) => nomeasure_tree(0, (depth + 6).max(12)),
                (Some(other), _) => return Err(Failure::Usage(format!("unknown example {other:?}"))),
                (None, Some(f)) => read_patch(&f)?,
                (None, None) => return Err(Failure::Usage("give --example or --patch".into())),
            };
            let g = build_orbit_graph(&seed, depth)?;
            if let Some(w) = &g.warning {
                eprintln!("warning: {w}");
            }
            Ok(g.to_text())
        }
        Command::MeasureCheck { graph } => {
            let g = OrbitGraph::parse_text(&read(&graph)?)?;
            Ok(invariant_measure(&g)?.to_string())
        }
        Command::RenderTree { patch, out, res } => {
            let cfg = RenderConfig { resolution: res, ..RenderConfig::default() };
            write(&out, &tree_svg(&read_patch(&patch)?, &cfg)?)?;
            Ok(String::new())
        }
        Command::RenderTiling { patch, depth, res, out } => {
            let cfg = RenderConfig { resolution: res, depth_limit: depth, ..RenderConfig::default() };
            write(&out, &tiling_svg(&read_patch(&patch)?, &cfg)?)?;
            Ok(String::new())
        }
        Command::VerifyPaper { fail_fast } => {
            let mut failed = Vec::new();
            for id in 1..=13 {
                let o = check(id);
                println!("{o}");
                if !o.passed {
                    failed.push(id.to_string());
                    if fail_fast {
                        break;
                    }
                }
            }
            if !fail_fast {
                for p in probes() {
                    println!("probe: {p}");
                }
            }
            if failed.is_empty() {
                Ok(String::new())
            } else {
                Err(Failure::Check(format!("failed criteria: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Op(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("{m}");
            ExitCode::from(3)
        }
    }
}
