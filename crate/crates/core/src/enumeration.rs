//! Exhaustive enumeration of DWBC configurations.
//!
//! Configurations are generated as alternating sign matrices by row-by-row
//! backtracking (partial column sums confined to {0, 1}), then scored with
//! site-dependent weights. Rows are indexed from the top, columns from the
//! right, matching the conventions in `model`.

use crate::error::{Error, Result};
use crate::model::{vertex_weights, SpectralParams64};
use crate::scalar::{c64, C64};

/// Largest N accepted by the enumerator (A_7 = 218348 configurations).
pub const ENUM_CAP: usize = 7;

/// The six vertex types. `A1`/`A2` carry weight a, `B1`/`B2` weight b,
/// `C1`/`C2` weight c; `C1` is the ASM `+1`, `C2` the `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexType {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl VertexType {
    pub fn weight_class(self) -> char {
        match self {
            VertexType::A1 | VertexType::A2 => 'a',
            VertexType::B1 | VertexType::B2 => 'b',
            VertexType::C1 | VertexType::C2 => 'c',
        }
    }
}

/// One DWBC configuration, stored as its alternating sign matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    n: usize,
    /// Row-major entries in {-1, 0, 1}; row 0 is the top, column 0 the
    /// rightmost.
    asm: Vec<i8>,
}

impl Configuration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn asm_entry(&self, row: usize, col: usize) -> i8 {
        self.asm[row * self.n + col]
    }

    /// Partial column sum strictly above `row`; 1 means the vertical edge
    /// entering the vertex from above carries spin down.
    fn col_sum_above(&self, row: usize, col: usize) -> i8 {
        (0..row).map(|r| self.asm_entry(r, col)).sum()
    }

    /// Partial row sum strictly to the right of `col`.
    fn row_sum_right(&self, row: usize, col: usize) -> i8 {
        (0..col).map(|c| self.asm_entry(row, c)).sum()
    }

    pub fn vertex_type(&self, row: usize, col: usize) -> VertexType {
        let m = self.asm_entry(row, col);
        let s = self.col_sum_above(row, col);
        let p = self.row_sum_right(row, col);
        match m {
            1 => VertexType::C1,
            -1 => VertexType::C2,
            _ => match (s, p) {
                (0, 1) => VertexType::A1,
                (1, 0) => VertexType::A2,
                (1, 1) => VertexType::B1,
                (0, 0) => VertexType::B2,
                _ => unreachable!("invalid ASM partial sums"),
            },
        }
    }

    /// Spin on the vertical edge of `col` below `row` (0-based rows);
    /// `true` means spin down, i.e. no solid line on that edge.
    pub fn vertical_edge_down(&self, row: usize, col: usize) -> bool {
        self.col_sum_above(row + 1, col) == 1
    }

    /// 1-based row of the unique `+1` in the boundary (rightmost) column:
    /// the row where the solid line turns left.
    pub fn turn_row(&self) -> usize {
        for r in 0..self.n {
            if self.asm_entry(r, 0) == 1 {
                return r + 1;
            }
        }
        unreachable!("boundary column of an ASM has exactly one +1")
    }

    /// Product of all vertex weights under the given parameters.
    pub fn weight(&self, params: &SpectralParams64) -> C64 {
        let n = self.n;
        let mut w = c64(1.0, 0.0);
        let mut col_sums = vec![0i8; n];
        for row in 0..n {
            let mut p = 0i8;
            for col in 0..n {
                let m = self.asm_entry(row, col);
                let vw = vertex_weights(&params.lambdas[row], &params.nus[col], &params.eta);
                w *= match m {
                    1 | -1 => vw.c,
                    _ => {
                        if col_sums[col] != p {
                            vw.a
                        } else {
                            vw.b
                        }
                    }
                };
                col_sums[col] += m;
                p += m;
            }
        }
        w
    }
}

/// Weighted tallies of the configuration ensemble.
#[derive(Clone, Debug)]
pub struct WeightedTally {
    pub total: C64,
    /// Index M-1: weight mass of configurations whose boundary-column turn
    /// is at row M.
    pub per_row_turn: Vec<C64>,
    /// Index M-1: weight mass with spin down on the boundary-column edge
    /// below row M (cumulative turn mass).
    pub per_row_down: Vec<C64>,
}

impl WeightedTally {
    pub fn h(&self, m: usize) -> C64 {
        self.per_row_turn[m - 1] / self.total
    }

    pub fn g(&self, m: usize) -> C64 {
        self.per_row_down[m - 1] / self.total
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n == 0 || n > ENUM_CAP {
        return Err(Error::Resource {
            what: "DWBC enumeration",
            cap: ENUM_CAP,
            requested: n,
        });
    }
    Ok(())
}

/// Visits every DWBC configuration of size `n` exactly once, in a
/// deterministic row-by-row order.
pub fn for_each_config(n: usize, mut visit: impl FnMut(&Configuration)) -> Result<()> {
    check_cap(n)?;
    let mut asm = vec![0i8; n * n];
    let mut col_sums = vec![0i8; n];
    fill_rows(n, 0, &mut asm, &mut col_sums, &mut visit);
    Ok(())
}

fn fill_rows(
    n: usize,
    row: usize,
    asm: &mut Vec<i8>,
    col_sums: &mut Vec<i8>,
    visit: &mut impl FnMut(&Configuration),
) {
    if row == n {
        let config = Configuration {
            n,
            asm: asm.clone(),
        };
        visit(&config);
        return;
    }
    fill_cols(n, row, 0, 0, asm, col_sums, visit);
}

fn fill_cols(
    n: usize,
    row: usize,
    col: usize,
    row_sum: i8,
    asm: &mut Vec<i8>,
    col_sums: &mut Vec<i8>,
    visit: &mut impl FnMut(&Configuration),
) {
    if col == n {
        if row_sum == 1 {
            fill_rows(n, row + 1, asm, col_sums, visit);
        }
        return;
    }
    for m in [-1i8, 0, 1] {
        let rs = row_sum + m;
        let cs = col_sums[col] + m;
        if !(0..=1).contains(&rs) || !(0..=1).contains(&cs) {
            continue;
        }
        asm[row * n + col] = m;
        col_sums[col] = cs;
        fill_cols(n, row, col + 1, rs, asm, col_sums, visit);
        col_sums[col] = cs - m;
        asm[row * n + col] = 0;
    }
}

/// All configurations of size `n`, materialized.
pub fn enumerate_configs(n: usize) -> Result<Vec<Configuration>> {
    let mut out = Vec::new();
    for_each_config(n, |c| out.push(c.clone()))?;
    Ok(out)
}

/// Ground-truth partition function by exhaustive summation.
pub fn z_by_enumeration(params: &SpectralParams64) -> Result<C64> {
    let mut total = c64(0.0, 0.0);
    for_each_config(params.n(), |c| total += c.weight(params))?;
    Ok(total)
}

/// Ground-truth boundary tallies: turn-row and cumulative spin-down masses.
pub fn correlators_by_enumeration(params: &SpectralParams64) -> Result<WeightedTally> {
    let n = params.n();
    let mut per_row_turn = vec![c64(0.0, 0.0); n];
    let mut total = c64(0.0, 0.0);
    for_each_config(n, |c| {
        let w = c.weight(params);
        total += w;
        per_row_turn[c.turn_row() - 1] += w;
    })?;
    let mut per_row_down = vec![c64(0.0, 0.0); n];
    let mut acc = c64(0.0, 0.0);
    for m in 0..n {
        acc += per_row_turn[m];
        per_row_down[m] = acc;
    }
    Ok(WeightedTally {
        total,
        per_row_turn,
        per_row_down,
    })
}

/// ASM counts A_1..A_7.
pub const ASM_COUNTS: [usize; 7] = [1, 2, 7, 42, 429, 7436, 218348];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SpectralParams;
    use crate::scalar::rel_err;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn counts_match_asm_numbers() {
        for n in 1..=6 {
            let mut count = 0usize;
            for_each_config(n, |_| count += 1).unwrap();
            assert_eq!(count, ASM_COUNTS[n - 1], "N = {n}");
        }
    }

    #[test]
    fn n1_single_forced_configuration() {
        let configs = enumerate_configs(1).unwrap();
        assert_eq!(configs.len(), 1);
        assert_eq!(configs[0].vertex_type(0, 0), VertexType::C1);
        assert_eq!(configs[0].turn_row(), 1);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            enumerate_configs(8),
            Err(Error::Resource { .. })
        ));
    }

    fn homogeneous_params(n: usize) -> SpectralParams64 {
        // generic homogeneous point, weights a, b, c all nonzero
        let lam = c64(0.9, 0.35);
        let eta = c64(0.31, 0.12);
        SpectralParams::new(vec![lam; n], vec![c64(0.0, 0.0); n], eta).unwrap()
    }

    #[test]
    fn z1_is_sinh_2eta() {
        let p = homogeneous_params(1);
        let z = z_by_enumeration(&p).unwrap();
        assert!(rel_err(&z, &p.eta.scale(2.0).sinh()) < 1e-14);
    }

    #[test]
    fn z2_homogeneous_closed_form() {
        let p = homogeneous_params(2);
        let w = vertex_weights(&p.lambdas[0], &p.nus[0], &p.eta);
        let expected = w.c * w.c * (w.a * w.a + w.b * w.b);
        let z = z_by_enumeration(&p).unwrap();
        assert!(rel_err(&z, &expected) < 1e-13);
    }

    #[test]
    fn n1_correlators_forced() {
        let p = homogeneous_params(1);
        let t = correlators_by_enumeration(&p).unwrap();
        assert!(rel_err(&t.h(1), &c64(1.0, 0.0)) < 1e-14);
        assert!(rel_err(&t.g(1), &c64(1.0, 0.0)) < 1e-14);
    }

    #[test]
    fn turn_masses_partition_total() {
        for n in 2..=5 {
            let p = homogeneous_params(n);
            let t = correlators_by_enumeration(&p).unwrap();
            let sum: C64 = t.per_row_turn.iter().sum();
            assert!(rel_err(&sum, &t.total) < 1e-12, "N = {n}");
            // G_N^(N) = 1 exactly: the boundary line always turns somewhere
            assert!(rel_err(&t.g(n), &c64(1.0, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn connection2_exact_from_tallies() {
        let p = homogeneous_params(4);
        let t = correlators_by_enumeration(&p).unwrap();
        for m in 1..=4 {
            let g_prev = if m == 1 {
                c64(0.0, 0.0)
            } else {
                t.g(m - 1)
            };
            assert!(rel_err(&t.h(m), &(t.g(m) - g_prev)) < 1e-14);
        }
    }

    #[test]
    fn free_fermion_h_3_2_is_half() {
        // homogeneous free-fermion point with lambda = pi/4: weights
        // a = cos, b = sin, c = 1 up to a phase; H_3^(2) = 1/2
        let lam_tilde = FRAC_PI_4;
        let lam = c64(0.0, lam_tilde + FRAC_PI_4);
        let p = SpectralParams::new(vec![lam; 3], vec![c64(0.0, 0.0); 3], c64(0.0, FRAC_PI_4))
            .unwrap();
        let t = correlators_by_enumeration(&p).unwrap();
        assert!(rel_err(&t.h(2), &c64(0.5, 0.0)) < 1e-12);
    }

    #[test]
    fn vertex_types_conserve_and_weight_classes() {
        for c in enumerate_configs(3).unwrap() {
            let mut c_count = 0;
            for r in 0..3 {
                for k in 0..3 {
                    if c.vertex_type(r, k).weight_class() == 'c' {
                        c_count += 1;
                    }
                }
            }
            // every DWBC configuration has an odd number of c vertices
            assert_eq!(c_count % 2, 1);
        }
    }
}
