//! Entry-by-entry comparison of the closed-form confluent factors against
//! factors obtained by brute-force elimination.
//!
//! The report splits `U_c` into its three closed-form regions and checks
//! `L_c` twice: once with the recurrence extended to the first column (what
//! [`factor_lc`] does) and once with the recurrence confined to columns
//! `2..i−1`, leaving column one at zero.

use alloc::vec::Vec;

use crate::error::Result;
use crate::factor::{factor_lc, factor_uc};
use crate::matrix::DenseMatrix;
use crate::oracle::inverse_triangular_factors;
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;
use crate::vander::build_confluent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Region {
    /// `U_c` rows and columns inside the repeated block.
    UcBlockDiagonal,
    /// `U_c` rows inside the block, columns past it.
    UcBlockCoupling,
    /// `U_c` rows past the block.
    UcTrailing,
    /// `L_c` from the recurrence including the first column.
    LcRecurrence,
    /// `L_c` from the recurrence restricted to columns `2..i−1`.
    LcInnerColumnsOnly,
}

impl Region {
    pub const ALL: [Region; 5] = [
        Region::UcBlockDiagonal,
        Region::UcBlockCoupling,
        Region::UcTrailing,
        Region::LcRecurrence,
        Region::LcInnerColumnsOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Region::UcBlockDiagonal => "uc_block_diagonal",
            Region::UcBlockCoupling => "uc_block_coupling",
            Region::UcTrailing => "uc_trailing",
            Region::LcRecurrence => "lc_recurrence",
            Region::LcInnerColumnsOnly => "lc_inner_columns_only",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub case: usize,
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionAgreement {
    pub region: Region,
    pub entries: usize,
    pub agreeing: usize,
    pub first_disagreement: Option<Disagreement>,
}

impl RegionAgreement {
    pub fn agrees(&self) -> bool {
        self.entries > 0 && self.entries == self.agreeing
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub cases: usize,
    pub regions: Vec<RegionAgreement>,
}

impl Default for AgreementReport {
    fn default() -> Self {
        Self::new()
    }
}

impl AgreementReport {
    pub fn new() -> Self {
        Self {
            cases: 0,
            regions: Region::ALL
                .iter()
                .map(|&region| RegionAgreement {
                    region,
                    entries: 0,
                    agreeing: 0,
                    first_disagreement: None,
                })
                .collect(),
        }
    }

    /// Every region has been exercised at least once.
    pub fn is_complete(&self) -> bool {
        self.cases > 0 && self.regions.iter().all(|r| r.entries > 0)
    }

    pub fn region(&self, region: Region) -> &RegionAgreement {
        self.regions
            .iter()
            .find(|r| r.region == region)
            .expect("all regions are present")
    }

    fn tally(&mut self, region: Region, case: usize, row: usize, col: usize, ok: bool) {
        let slot = self
            .regions
            .iter_mut()
            .find(|r| r.region == region)
            .expect("all regions are present");
        slot.entries += 1;
        if ok {
            slot.agreeing += 1;
        } else if slot.first_disagreement.is_none() {
            slot.first_disagreement = Some(Disagreement { case, row, col });
        }
    }

    /// Adds one spectrum (exactly one repeated node, placed first).
    pub fn record<S: Scalar>(&mut self, s: &Spectrum<S>, tol: f64) -> Result<()> {
        let case = self.cases;
        let m = s.nodes()[0].multiplicity;
        let c = build_confluent(s)?.matrix;
        let (oracle_u, oracle_l) = inverse_triangular_factors(&c)?;
        let uc = factor_uc(s)?;
        let lc = factor_lc(s)?;
        let inner_only = inner_columns_recurrence(&s.expanded_values());
        let n = s.size();

        for i in 0..n {
            for j in i..n {
                let region = if j < m {
                    Region::UcBlockDiagonal
                } else if i < m {
                    Region::UcBlockCoupling
                } else {
                    Region::UcTrailing
                };
                let ok = uc[(i, j)].approx_eq(&oracle_u[(i, j)], tol);
                self.tally(region, case, i, j, ok);
            }
            for j in 0..=i {
                let ok = lc[(i, j)].approx_eq(&oracle_l[(i, j)], tol);
                self.tally(Region::LcRecurrence, case, i, j, ok);
                let ok = inner_only[(i, j)].approx_eq(&oracle_l[(i, j)], tol);
                self.tally(Region::LcInnerColumnsOnly, case, i, j, ok);
            }
        }
        self.cases += 1;
        Ok(())
    }
}

// Recurrence evaluated only for columns 2..i−1 (1-based); column one keeps
// its zero initial value below the diagonal.
fn inner_columns_recurrence<S: Scalar>(mu: &[S]) -> DenseMatrix<S> {
    let n = mu.len();
    let mut m = DenseMatrix::<S>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = S::one();
        for j in 1..i {
            let v = m[(i - 1, j - 1)].clone() - m[(i - 1, j)].clone() * mu[i - 1].clone();
            m[(i, j)] = v;
        }
    }
    m
}
