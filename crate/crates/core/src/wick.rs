//! Brute-force counting of connected Wick contractions.
//!
//! Each of the `n` vertices is a product of two field operators ("slots").
//! A contraction pattern is a perfect matching of the `2n` slots with no
//! slot paired to its own vertex; it is connected when the vertex graph
//! induced by the matching is connected.

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

pub const MIN_VERTICES: usize = 2;
pub const MAX_VERTICES: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContractionCount {
    pub n: usize,
    pub total_connected: u64,
    pub formula_value: u64,
}

impl ContractionCount {
    pub fn matches(&self) -> bool {
        self.total_connected == self.formula_value
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(MIN_VERTICES..=MAX_VERTICES).contains(&n) {
        return Err(Error::Domain {
            what: "vertex count (2..=7)",
            value: n as f64,
        });
    }
    Ok(())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A slot: owning vertex and a field label. Only equal labels contract.
#[derive(Debug, Clone, Copy)]
struct Slot {
    vertex: usize,
    label: u8,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Counts all admissible matchings and the connected subset.
#[derive(Debug, Default, Clone, Copy)]
struct MatchingTally {
    all: u64,
    connected: u64,
}

fn enumerate_matchings(slots: &[Slot], n_vertices: usize) -> MatchingTally {
    fn recurse(
        slots: &[Slot],
        used: &mut [bool],
        pairs: &mut Vec<(usize, usize)>,
        n_vertices: usize,
        tally: &mut MatchingTally,
    ) {
        let Some(i) = used.iter().position(|u| !u) else {
            tally.all += 1;
            let mut uf = UnionFind::new(n_vertices);
            for &(a, b) in pairs.iter() {
                uf.union(slots[a].vertex, slots[b].vertex);
            }
            let root = uf.find(0);
            if (1..n_vertices).all(|v| uf.find(v) == root) {
                tally.connected += 1;
            }
            return;
        };
        used[i] = true;
        for j in i + 1..slots.len() {
            if used[j] || slots[j].vertex == slots[i].vertex || slots[j].label != slots[i].label {
                continue;
            }
            used[j] = true;
            pairs.push((i, j));
            recurse(slots, used, pairs, n_vertices, tally);
            pairs.pop();
            used[j] = false;
        }
        used[i] = false;
    }

    let mut tally = MatchingTally::default();
    let mut used = vec![false; slots.len()];
    recurse(slots, &mut used, &mut Vec::new(), n_vertices, &mut tally);
    tally
}

fn scalar_slots(n: usize) -> Vec<Slot> {
    (0..2 * n).map(|i| Slot { vertex: i / 2, label: 0 }).collect()
}

/// Connected contractions of `<:φ̇²:_1 ... :φ̇²:_n>`; equals `2^{n-1} (n-1)!`.
pub fn count_connected_scalar(n: usize) -> Result<ContractionCount> {
    check_n(n)?;
    let tally = enumerate_matchings(&scalar_slots(n), n);
    Ok(ContractionCount {
        n,
        total_connected: tally.connected,
        formula_value: (1u64 << (n - 1)) * factorial(n - 1),
    })
}

/// All contractions of `n` scalar vertices without self-contraction,
/// connected or not.
pub fn count_scalar_no_self_loop(n: usize) -> Result<u64> {
    check_n(n)?;
    Ok(enumerate_matchings(&scalar_slots(n), n).all)
}

// Field labels: E^x, E^y, B^x, B^y.
const EX: u8 = 0;
const EY: u8 = 1;
const BX: u8 = 2;
const BY: u8 = 3;

/// Slots of vertex `v` for term choice `term`: 0 → E^x B^y, 1 → E^y B^x.
fn flux_vertex(v: usize, term: bool) -> [Slot; 2] {
    let (e, b) = if term { (EY, BX) } else { (EX, BY) };
    [Slot { vertex: v, label: e }, Slot { vertex: v, label: b }]
}

/// Connected contractions of `<S^z_1 ... S^z_n>` counted by the sequential
/// chain procedure, summed over the `2^n` choices of term at each vertex.
///
/// Starting at vertex 1, its E slot contracts with the matching E slot of
/// an unvisited vertex, its B slot with the matching B slot of another
/// unvisited vertex, and the chain is extended from that end, alternating
/// E and B, until every vertex is visited. The final contraction that
/// closes the loop is implied and not type-checked. Gives `2 (n-1)!`.
///
/// For odd `n` that closing contraction pairs an E with a B slot, which
/// vanishes; see [`count_connected_flux_strict`].
pub fn count_connected_flux(n: usize) -> Result<ContractionCount> {
    check_n(n)?;
    fn extend(terms: &[bool], from: usize, need_e: bool, visited: u32) -> u64 {
        let n = terms.len();
        if visited.count_ones() as usize == n {
            return 1;
        }
        let want = flux_vertex(from, terms[from])[if need_e { 0 } else { 1 }].label;
        (0..n)
            .filter(|&v| visited & (1 << v) == 0)
            .filter(|&v| flux_vertex(v, terms[v])[if need_e { 0 } else { 1 }].label == want)
            .map(|v| extend(terms, v, !need_e, visited | (1 << v)))
            .sum()
    }

    let mut total = 0;
    for mask in 0u32..(1 << n) {
        let terms: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
        let e0 = flux_vertex(0, terms[0])[0].label;
        for j in 1..n {
            if flux_vertex(j, terms[j])[0].label != e0 {
                continue;
            }
            // E_1 contracted with E_j; continue from the B slot of vertex 1.
            total += extend(&terms, 0, false, 1 | (1 << j));
        }
    }
    Ok(ContractionCount {
        n,
        total_connected: total,
        formula_value: 2 * factorial(n - 1),
    })
}

/// Fully type-checked count: every contraction, including the closing one,
/// pairs equal field components. Equals `2 (n-1)!` for even `n` and 0 for
/// odd `n` (odd moments of a symmetric distribution vanish).
pub fn count_connected_flux_strict(n: usize) -> Result<ContractionCount> {
    check_n(n)?;
    let mut total = 0;
    for mask in 0u32..(1 << n) {
        let slots: Vec<Slot> = (0..n).flat_map(|v| flux_vertex(v, mask & (1 << v) != 0)).collect();
        total += enumerate_matchings(&slots, n).connected;
    }
    Ok(ContractionCount {
        n,
        total_connected: total,
        formula_value: if n % 2 == 0 { 2 * factorial(n - 1) } else { 0 },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KnRatio {
    pub n: usize,
    /// `(2/3)^n · flux/scalar · k_n(φ̇²)`.
    pub value: f64,
    /// `4 / (6π²)^n`.
    pub closed_form: f64,
    /// Counts came from enumeration (n <= 7) rather than their formulas.
    pub enumerated: bool,
}

impl KnRatio {
    pub fn relative_error(&self) -> f64 {
        ((self.value - self.closed_form) / self.closed_form).abs()
    }
}

/// `k_n(S^z)` rebuilt from contraction counts and the 2/3 weight per
/// electromagnetic contraction.
pub fn kn_ratio(n: usize) -> Result<KnRatio> {
    if n < MIN_VERTICES {
        return Err(Error::Domain {
            what: "moment order",
            value: n as f64,
        });
    }
    let enumerated = n <= MAX_VERTICES;
    let (flux, scalar) = if enumerated {
        (
            count_connected_flux(n)?.total_connected as f64,
            count_connected_scalar(n)?.total_connected as f64,
        )
    } else {
        // 2 (n-1)! / (2^{n-1} (n-1)!)
        (2.0, 2f64.powi(n as i32 - 1))
    };
    let nf = n as i32;
    let kn_scalar = (2.0 * PI * PI).powi(-nf);
    Ok(KnRatio {
        n,
        value: (2.0f64 / 3.0).powi(nf) * flux / scalar * kn_scalar,
        closed_form: 4.0 * (6.0 * PI * PI).powi(-nf),
        enumerated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_counts() {
        assert_eq!(count_connected_scalar(2).unwrap().total_connected, 2);
        assert_eq!(count_connected_scalar(3).unwrap().total_connected, 8);
        assert_eq!(count_connected_scalar(5).unwrap().total_connected, 384);
        assert!(count_scalar_no_self_loop(5).unwrap() <= 945);
    }

    #[test]
    fn flux_counts() {
        assert_eq!(count_connected_flux(2).unwrap().total_connected, 2);
        assert_eq!(count_connected_flux(3).unwrap().total_connected, 4);
        assert_eq!(count_connected_flux(4).unwrap().total_connected, 12);
    }

    #[test]
    fn strict_flux_counts_vanish_for_odd_n() {
        for n in 2..=6 {
            let c = count_connected_flux_strict(n).unwrap();
            assert!(c.matches(), "n={n}: {c:?}");
        }
        assert_eq!(count_connected_flux_strict(3).unwrap().total_connected, 0);
        assert_eq!(count_connected_flux_strict(4).unwrap().total_connected, 12);
    }

    #[test]
    fn out_of_range() {
        assert!(count_connected_scalar(1).is_err());
        assert!(count_connected_scalar(8).is_err());
        assert!(count_connected_flux(0).is_err());
        assert!(kn_ratio(1).is_err());
    }

    /// Σ over set partitions into blocks (size >= 2) of Π C(|block|).
    fn partition_sum(n: usize, connected: &[u64]) -> u64 {
        // Fix the block containing element 0: choose k-1 companions from n-1.
        fn binom(n: usize, k: usize) -> u64 {
            (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
        }
        let mut d = vec![0u64; n + 1];
        d[0] = 1;
        for m in 1..=n {
            d[m] = (2..=m).map(|k| binom(m - 1, k - 1) * connected[k] * d[m - k]).sum();
        }
        d[n]
    }

    #[test]
    fn inclusion_exclusion_consistency() {
        let connected: Vec<u64> = (0..=5)
            .map(|k| if k < 2 { 0 } else { count_connected_scalar(k).unwrap().total_connected })
            .collect();
        for n in 2..=5 {
            assert_eq!(partition_sum(n, &connected), count_scalar_no_self_loop(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn kn_values() {
        let k = kn_ratio(2).unwrap();
        assert!((k.value / 1.140_664_694_964_926e-3 - 1.0).abs() < 1e-12);
        let k = kn_ratio(3).unwrap();
        assert!((k.value / 1.926_224_950_547_875e-5 - 1.0).abs() < 1e-12);
        for n in 2..10 {
            let r = kn_ratio(n + 1).unwrap().value / kn_ratio(n).unwrap().value;
            assert!((r * 6.0 * PI * PI - 1.0).abs() < 1e-13);
        }
        assert!(!kn_ratio(9).unwrap().enumerated);
    }
}
