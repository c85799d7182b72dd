//! The chi procedure on line words, dyadic valuations and exact ones-proportions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::tree::{Address, Color, LineWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressSet {
    pub level: usize,
    pub members: BTreeSet<Address>,
}

pub fn ones_addresses(w: &LineWord) -> Result<AddressSet> {
    if !w.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(w.len()));
    }
    let level = w.level();
    let members = w
        .0
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(i, _)| Address::from_index(level, i as u64))
        .collect();
    Ok(AddressSet { level, members })
}

/// `1_{2l}(chi(P)) = theta(1_l(P))`, for any grammar.
pub fn chi(s: &Substitution, w: &LineWord) -> Result<LineWord> {
    let ones = ones_addresses(w)?;
    let out_level = 2 * ones.level;
    let mut bits = vec![0; 1usize << out_level];
    for a in &ones.members {
        for b in s.theta(a) {
            bits[b.index() as usize] = 1;
        }
    }
    Ok(LineWord(bits))
}

/// BBAB fast path: `chi(W1 W2) = chi(W2) chi(W2) chi(W1) chi(W2)`.
pub fn chi_bbab(w: &LineWord) -> Result<LineWord> {
    if !w.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(w.len()));
    }
    Ok(LineWord(chi_rec(&w.0)))
}

fn chi_rec(w: &[Color]) -> Vec<Color> {
    if w.len() == 1 {
        return w.to_vec();
    }
    let (w1, w2) = w.split_at(w.len() / 2);
    let c1 = chi_rec(w1);
    let c2 = chi_rec(w2);
    let mut out = Vec::with_capacity(w.len() * w.len());
    out.extend_from_slice(&c2);
    out.extend_from_slice(&c2);
    out.extend_from_slice(&c1);
    out.extend_from_slice(&c2);
    out
}

/// `u`-fold chi; a word of length `2^l` becomes one of length `2^(l 2^u)`.
pub fn chi_pow(s: &Substitution, w: &LineWord, u: u32) -> Result<LineWord> {
    let fast = *s == Substitution::bbab();
    let mut cur = w.clone();
    for _ in 0..u {
        cur = if fast { chi_bbab(&cur)? } else { chi(s, &cur)? };
    }
    Ok(cur)
}

/// `chi^u(10)` for the Jacaranda system.
pub fn chi_block(u: u32) -> LineWord {
    chi_pow(&Substitution::bbab(), &LineWord(vec![1, 0]), u).expect("10 has length 2")
}

pub fn v2(k: i64) -> Result<u32> {
    if k < 1 {
        return Err(Error::NonPositive(k));
    }
    Ok(k.trailing_zeros())
}

/// Checks the three cases for `v2(2^k(2m+1) + 2^(k'+1))` over `1 <= k, k' <= max_k`, `m <= max_m`.
pub fn check_dyadic_cases(max_k: u32, max_m: i64) -> bool {
    for k in 1..=max_k {
        for kp in 1..=max_k {
            for m in 0..=max_m {
                let x = (1i64 << k) * (2 * m + 1) + (1i64 << (kp + 1));
                let v = v2(x).unwrap();
                let ok = if kp >= k {
                    v == k
                } else if kp + 1 == k {
                    v > k
                } else {
                    v == kp + 1
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// `f^n(1)` for `f(x) = x + 1/x + 1`.
pub fn f_iter(n: u32) -> BigRational {
    let mut x = BigRational::one();
    for _ in 0..n {
        x = &x + x.recip() + BigRational::one();
    }
    x
}

/// `1 / (1 + f^u(1))`, the ones-density of lines `2^u (2n+1)`.
pub fn density(u: u32) -> BigRational {
    (BigRational::one() + f_iter(u)).recip()
}

/// Number of ones on line `2^n` of the Jacaranda tree.
pub fn ones_count_line_2n(n: u32) -> Result<BigInt> {
    let len = BigRational::from_integer(BigInt::one() << (1usize << n));
    let v = len * density(n);
    if !v.is_integer() {
        return Err(Error::NonIntegerResult(v.to_string()));
    }
    Ok(v.to_integer())
}

/// Line `m` of J: copies of `chi^(v2 m)(10)`.
pub fn line_formula(m: usize) -> Result<LineWord> {
    let u = v2(m as i64)?;
    let block = chi_block(u);
    Ok(LineWord::repeat(&block.0, (1usize << m) / block.len()))
}

pub fn ones_ratio(w: &LineWord) -> BigRational {
    BigRational::new(BigInt::from(w.ones()), BigInt::from(w.len()))
}

pub fn proportion_check(w: &LineWord, u: u32) -> bool {
    !w.is_empty() && ones_ratio(w) == density(u)
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `P_u / 2^(2^u)` as a reduced fraction.
pub fn proportion(u: u32) -> BigRational {
    density(u)
}

pub fn is_zero_word(w: &[Color]) -> bool {
    w.iter().all(|c| c.is_zero())
}

pub fn small_int(r: &BigInt) -> Option<u64> {
    r.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> LineWord {
        s.parse().unwrap()
    }

    #[test]
    fn ones_address_examples() {
        let s = |x: &str| -> Vec<String> {
            ones_addresses(&w(x)).unwrap().members.iter().map(|a| a.to_string()).collect()
        };
        assert_eq!(s("0010"), ["ba"]);
        assert_eq!(s("01000001"), ["aab", "bbb"]);
        assert!(s("0000").is_empty());
        assert!("010".parse::<LineWord>().is_err());
    }

    #[test]
    fn chi_examples() {
        let h = Substitution::bbab();
        assert_eq!(chi(&h, &w("10")).unwrap().to_string(), "0010");
        assert_eq!(chi(&h, &w("0010")).unwrap().to_string(), "0010001000000010");
        assert_eq!(chi(&h, &w("00")).unwrap().to_string(), "0000");
        assert_eq!(chi_bbab(&w("0010")).unwrap(), chi(&h, &w("0010")).unwrap());
        assert_eq!(chi_pow(&h, &w("10"), 0).unwrap().to_string(), "10");
        assert_eq!(chi_pow(&h, &w("10"), 2).unwrap().to_string(), "0010001000000010");
        let c3 = chi_pow(&h, &w("10"), 3).unwrap();
        assert_eq!((c3.len(), c3.ones()), (256, 39));
    }

    #[test]
    fn valuations() {
        assert_eq!(v2(12).unwrap(), 2);
        assert_eq!(v2(22).unwrap(), 1);
        assert_eq!(v2(1).unwrap(), 0);
        assert_eq!(v2(0), Err(Error::NonPositive(0)));
        assert!(check_dyadic_cases(8, 40));
    }

    #[test]
    fn f_values() {
        let r = |n| rational_to_string(&f_iter(n));
        assert_eq!(r(0), "1");
        assert_eq!(r(1), "3");
        assert_eq!(r(2), "13/3");
        assert_eq!(r(3), "217/39");
        assert_eq!(r(4), "57073/8463");
        let counts: Vec<String> = (0..5).map(|n| ones_count_line_2n(n).unwrap().to_string()).collect();
        assert_eq!(counts, ["1", "1", "3", "39", "8463"]);
        assert_eq!(rational_to_string(&proportion(4)), "8463/65536");
    }

    #[test]
    fn line_formula_examples() {
        assert_eq!(line_formula(3).unwrap().to_string(), "10101010");
        assert_eq!(line_formula(6).unwrap().to_string(), "0010".repeat(16));
        assert_eq!(line_formula(4).unwrap().to_string(), "0010001000000010");
    }

    #[test]
    fn proportions() {
        assert!(proportion_check(&w("0010"), 1));
        assert!(proportion_check(&w("10"), 0));
        assert!(!proportion_check(&w("0000"), 1));
    }
}
