//! Young diagrams with at most `d` rows, labelled by the row-difference vector
//! `p = (p_1, …, p_{d−1})`.
//!
//! Rows are indexed from the bottom: row 0 has length `a`, row `i` has length
//! `a + p_1 + … + p_i`. The diagram has `N = d·a + Σ_i (d−i)·p_i` boxes, so a
//! weight is realisable on `N` boxes iff `N − Σ_i (d−i)·p_i` is a non-negative
//! multiple of `d`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::bigmath::factorial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    d: u32,
    p: Vec<u32>,
    boxes: u64,
    a: u64,
}

impl YoungDiagram {
    pub fn new(d: u32, p: &[u32], boxes: u64) -> Option<Self> {
        if d < 2 || p.len() != (d - 1) as usize {
            return None;
        }
        let a = row0_length(d, p, boxes)?;
        Some(Self { d, p: p.to_vec(), boxes, a })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn weight(&self) -> &[u32] {
        &self.p
    }

    pub fn boxes(&self) -> u64 {
        self.boxes
    }

    /// Length of the shortest (bottom) row.
    pub fn a(&self) -> u64 {
        self.a
    }

    /// Row lengths from the top, weakly decreasing.
    pub fn partition(&self) -> Vec<u64> {
        let mut rows = Vec::with_capacity(self.d as usize);
        let mut len = self.a;
        rows.push(len);
        for &pi in &self.p {
            len += pi as u64;
            rows.push(len);
        }
        rows.reverse();
        rows
    }

    /// Dimension of the symmetric-group irrep, N! / Π hooks.
    pub fn sn_dimension(&self) -> BigUint {
        let rows = self.partition();
        let hooks = hook_lengths(&rows).into_iter().fold(BigUint::one(), |acc, h| acc * h);
        factorial(self.boxes) / hooks
    }

    /// SU(d) dimension by the factor-over-hooks rule.
    pub fn sud_dimension_by_hooks(&self) -> BigUint {
        let rows = self.partition();
        let mut factors = BigUint::one();
        for (r, &len) in rows.iter().enumerate() {
            for c in 0..len {
                factors *= (self.d as u64 + c) - r as u64;
            }
        }
        let hooks = hook_lengths(&rows).into_iter().fold(BigUint::one(), |acc, h| acc * h);
        factors / hooks
    }
}

fn row0_length(d: u32, p: &[u32], boxes: u64) -> Option<u64> {
    let used: u64 = p.iter().enumerate().map(|(i, &pi)| (d as u64 - 1 - i as u64) * pi as u64).sum();
    let rest = boxes.checked_sub(used)?;
    (rest % d as u64 == 0).then_some(rest / d as u64)
}

/// Hook length of every box, row-major from the top-left.
pub fn hook_lengths(rows: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = rows[r + 1..].iter().take_while(|&&l| l > c).count() as u64;
            out.push(arm + leg + 1);
        }
    }
    out
}

/// Product formula for dim V_p of SU(d):
/// Π_{s=1}^{d−1} Π_{x=1}^{s} (p_x + … + p_{s} + s − x + 1) / s!.
pub fn sud_dimension(p: &[u32]) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for s in 1..=p.len() {
        for x in 1..=s {
            let partial: u64 = p[x - 1..s].iter().map(|&v| v as u64).sum();
            num *= partial + (s - x + 1) as u64;
        }
        den *= factorial(s as u64);
    }
    num / den
}

pub fn sud_dimension_u64(p: &[u32]) -> Option<u64> {
    sud_dimension(p).to_u64()
}

/// All weights realisable on `boxes` boxes, in lexicographic order of `p`.
pub fn enumerate_weights(d: u32, boxes: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; (d - 1) as usize];
    fn rec(d: u32, boxes: u64, idx: usize, used: u64, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == current.len() {
            if (boxes - used).is_multiple_of(d as u64) {
                out.push(current.clone());
            }
            return;
        }
        let cost = (d as u64) - 1 - idx as u64;
        let mut v = 0u64;
        while used + cost * v <= boxes {
            current[idx] = v as u32;
            rec(d, boxes, idx + 1, used + cost * v, current, out);
            v += 1;
        }
        current[idx] = 0;
    }
    rec(d, boxes, 0, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts standard Young tableaux by filling 1..N one box at a time.
    fn count_standard_tableaux(rows: &[u64]) -> u64 {
        fn rec(rows: &[u64], filled: &mut Vec<u64>) -> u64 {
            if filled.iter().zip(rows).all(|(f, r)| f == r) {
                return 1;
            }
            let mut total = 0;
            for r in 0..rows.len() {
                let can = filled[r] < rows[r] && (r == 0 || filled[r - 1] > filled[r]);
                if can {
                    filled[r] += 1;
                    total += rec(rows, filled);
                    filled[r] -= 1;
                }
            }
            total
        }
        rec(rows, &mut vec![0; rows.len()])
    }

    /// Counts semistandard tableaux with entries 1..=d.
    fn count_semistandard_tableaux(rows: &[u64], d: u32) -> u64 {
        let cells: Vec<(usize, usize)> =
            rows.iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
        fn rec(cells: &[(usize, usize)], k: usize, grid: &mut Vec<Vec<u32>>, d: u32) -> u64 {
            if k == cells.len() {
                return 1;
            }
            let (r, c) = cells[k];
            let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
            let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
            let mut total = 0;
            for v in lo_row.max(lo_col)..=d {
                grid[r][c] = v;
                total += rec(cells, k + 1, grid, d);
            }
            total
        }
        let mut grid: Vec<Vec<u32>> = rows.iter().map(|&l| vec![0; l as usize]).collect();
        rec(&cells, 0, &mut grid, d)
    }

    #[test]
    fn su3_small_dimensions() {
        assert_eq!(sud_dimension(&[1, 0]), BigUint::from(3u32));
        assert_eq!(sud_dimension(&[0, 1]), BigUint::from(3u32));
        assert_eq!(sud_dimension(&[1, 1]), BigUint::from(8u32));
        assert_eq!(sud_dimension(&[3, 0]), BigUint::from(10u32));
        assert_eq!(sud_dimension(&[]), BigUint::one());
    }

    #[test]
    fn row_convention() {
        // p=(0,1) on one box is the single-box diagram.
        let y = YoungDiagram::new(3, &[0, 1], 1).unwrap();
        assert_eq!(y.partition(), vec![1, 0, 0]);
        let adj = YoungDiagram::new(3, &[1, 1], 3).unwrap();
        assert_eq!(adj.partition(), vec![2, 1, 0]);
        assert!(YoungDiagram::new(3, &[1, 1], 4).is_none());
        assert!(YoungDiagram::new(3, &[2, 0], 3).is_none());
    }

    #[test]
    fn hook_formula_matches_tableau_enumeration() {
        for d in 2..=3u32 {
            for n in 0..=6u64 {
                let mut total = BigUint::from(0u32);
                for p in enumerate_weights(d, n) {
                    let y = YoungDiagram::new(d, &p, n).unwrap();
                    let rows = y.partition();
                    assert_eq!(y.sn_dimension(), BigUint::from(count_standard_tableaux(&rows)), "d={d} p={p:?}");
                    let ssyt = BigUint::from(count_semistandard_tableaux(&rows, d));
                    assert_eq!(y.sud_dimension_by_hooks(), ssyt, "d={d} p={p:?}");
                    assert_eq!(sud_dimension(&p), ssyt, "d={d} p={p:?}");
                    total += y.sn_dimension() * sud_dimension(&p);
                }
                assert_eq!(total, BigUint::from(d).pow(n as u32));
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let ws = enumerate_weights(3, 6);
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(ws, sorted);
        assert!(ws.contains(&vec![0, 0]));
        assert!(ws.contains(&vec![3, 0]));
        assert!(ws.contains(&vec![0, 3]));
    }
}
