//! Shared helpers for the integration tests: fixture loading, a pass/fail
//! harness that prints one line per criterion, and an independent dimension
//! count for the classical complex used to cross-check the library's tables.
#![allow(dead_code)]

use homdef::deform::DeformationJet;
use homdef::hlr::HlrStructure;
use homdef::io;
use homdef::Rat;
use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn structure(name: &str) -> HlrStructure {
    let (_, s, _) = io::load_structure_file(&fixture_path(name))
        .unwrap_or_else(|e| panic!("loading fixture {name}: {e}"));
    s
}

pub fn structure_with_generators(name: &str) -> (HlrStructure, Vec<Vec<Rat>>) {
    let (_, s, gens) = io::load_structure_file(&fixture_path(name))
        .unwrap_or_else(|e| panic!("loading fixture {name}: {e}"));
    (s, gens.unwrap_or_else(|| panic!("fixture {name} declares no generators")))
}

pub fn jet(jet_name: &str, structure_name: &str) -> (HlrStructure, DeformationJet) {
    let s = structure(structure_name);
    let (_, jet) = io::load_jet_file(&fixture_path(jet_name), structure_name, &s)
        .unwrap_or_else(|e| panic!("loading jet {jet_name}: {e}"));
    (s, jet)
}

/// Runs one acceptance criterion, prints exactly one PASS/FAIL line for it,
/// and panics with the collected diagnostic on failure.
pub fn criterion(number: usize, label: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {number} ({label}): PASS"),
        Err(why) => {
            println!("criterion {number} ({label}): FAIL");
            panic!("criterion {number} ({label}): {why}");
        }
    }
}

/// Early-returns a diagnostic from a criterion body when a check fails.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

/// An independent count of the cohomology dimensions of a Lie algebra over
/// the rationals acting on itself. Everything here is computed from scratch —
/// the fixture file is re-read with a plain JSON parser and the ranks come
/// from a local elimination routine — so agreement with the library is a real
/// cross-check rather than the same code run twice.
pub mod ce {
    use num::traits::{One, Zero};
    use num::BigRational as R;
    use serde_json::Value;
    use std::str::FromStr;

    /// Structure constants `bra[i][j] = [e_i, e_j]`, filled antisymmetrically.
    pub struct LieTable {
        pub dim: usize,
        pub bra: Vec<Vec<Vec<R>>>,
    }

    fn parse(cell: &Value, what: &str) -> R {
        let s = cell.as_str().unwrap_or_else(|| panic!("{what}: expected a string rational"));
        R::from_str(s).unwrap_or_else(|_| panic!("{what}: bad rational {s:?}"))
    }

    /// Reads a structure fixture, insisting on the shape this oracle can
    /// handle: scalar base ring, identity twists, zero anchor.
    pub fn load(path: &std::path::Path) -> LieTable {
        let text = std::fs::read_to_string(path).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["algebra"]["dim"].as_u64(), Some(1), "oracle handles scalar base rings only");
        assert!(parse(&v["algebra"]["phi"][0][0], "phi").is_one(), "oracle expects an identity ring map");
        let dim = v["module"]["dim"].as_u64().unwrap() as usize;
        for i in 0..dim {
            for j in 0..dim {
                let cell = parse(&v["module"]["beta"][i][j], "beta");
                let want = if i == j { R::one() } else { R::zero() };
                assert_eq!(cell, want, "oracle expects an identity twist");
            }
        }
        for mat in v["anchor"].as_array().unwrap() {
            for row in mat.as_array().unwrap() {
                for cell in row.as_array().unwrap() {
                    assert!(parse(cell, "anchor").is_zero(), "oracle expects a zero anchor");
                }
            }
        }
        let mut bra = vec![vec![vec![R::zero(); dim]; dim]; dim];
        if let Some(map) = v["bracket"].as_object() {
            for (key, val) in map {
                let (i, j) = key.split_once(',').expect("bracket key");
                let (i, j): (usize, usize) = (i.trim().parse().unwrap(), j.trim().parse().unwrap());
                for (k, cell) in val.as_array().unwrap().iter().enumerate() {
                    let c = parse(cell, "bracket");
                    bra[i][j][k] = c.clone();
                    bra[j][i][k] = -c;
                }
            }
        }
        LieTable { dim, bra }
    }

    /// All strictly increasing `k`-tuples drawn from `0..n`.
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, k, &mut Vec::new(), &mut out);
        out
    }

    /// Sorts a tuple of basis indices, tracking the permutation sign;
    /// `None` when an index repeats (the alternating evaluation is zero).
    fn normalize(mut t: Vec<usize>) -> Option<(i64, Vec<usize>)> {
        let mut sign = 1i64;
        for i in 1..t.len() {
            let mut j = i;
            while j > 0 && t[j - 1] > t[j] {
                t.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if t.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, t))
    }

    pub fn cochain_dim(g: &LieTable, n: usize) -> usize {
        combos(g.dim, n).len() * g.dim
    }

    /// The degree-`n` differential of the complex of alternating maps into
    /// the algebra itself, as a dense matrix over the unit cochains
    /// `(increasing n-tuple, target coordinate)`.
    fn delta_matrix(g: &LieTable, n: usize) -> Vec<Vec<R>> {
        let dom = combos(g.dim, n);
        let cod = combos(g.dim, n + 1);
        let (rows, cols) = (cod.len() * g.dim, dom.len() * g.dim);
        let mut m = vec![vec![R::zero(); cols]; rows];
        let find = |tuple: &[usize]| dom.iter().position(|s| s == tuple);
        for (ci, tuple) in cod.iter().enumerate() {
            for (i, &xi) in tuple.iter().enumerate() {
                let rest: Vec<usize> =
                    tuple.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &x)| x).collect();
                let Some(si) = find(&rest) else { continue };
                let sgn = if i % 2 == 0 { R::one() } else { -R::one() };
                for t in 0..g.dim {
                    for k in 0..g.dim {
                        let c = &g.bra[xi][t][k];
                        if !c.is_zero() {
                            m[ci * g.dim + k][si * g.dim + t] += &sgn * c;
                        }
                    }
                }
            }
            for i in 0..tuple.len() {
                for j in (i + 1)..tuple.len() {
                    let rest: Vec<usize> = tuple
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i && p != j)
                        .map(|(_, &x)| x)
                        .collect();
                    for k in 0..g.dim {
                        let c = &g.bra[tuple[i]][tuple[j]][k];
                        if c.is_zero() {
                            continue;
                        }
                        let mut led = vec![k];
                        led.extend_from_slice(&rest);
                        let Some((sgn, sorted)) = normalize(led) else { continue };
                        let Some(si) = find(&sorted) else { continue };
                        let negate = ((i + j) % 2 == 1) ^ (sgn < 0);
                        let c = if negate { -c.clone() } else { c.clone() };
                        for t in 0..g.dim {
                            m[ci * g.dim + t][si * g.dim + t] += c.clone();
                        }
                    }
                }
            }
        }
        m
    }

    /// Rank by plain Gaussian elimination over the rationals.
    #[allow(clippy::needless_range_loop)]
    fn rank(mut m: Vec<Vec<R>>) -> usize {
        let rows = m.len();
        if rows == 0 {
            return 0;
        }
        let cols = m[0].len();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let pivot = m[r][c].clone();
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = &m[i][c] / &pivot;
                    for cc in c..cols {
                        let sub = &m[r][cc] * &factor;
                        m[i][cc] -= sub;
                    }
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    /// `dim H^n = dim ker δ_n − rank δ_{n−1}`.
    pub fn h_dim(g: &LieTable, n: usize) -> usize {
        let cocycles = cochain_dim(g, n) - rank(delta_matrix(g, n));
        let boundaries = if n == 0 { 0 } else { rank(delta_matrix(g, n - 1)) };
        cocycles - boundaries
    }
}
