//! Rank-level verification of the Lefschetz, anisotropy and local h*
//! statements, with reports that record how each verdict was reached.
//!
//! Random-mode checks run at independent specializations of Θ and ℓ.
//! A map of full rank at one specialization whose pieces have the generic
//! dimensions has full rank generically, so a single good seed certifies a
//! rank claim; deficient seeds are reported but do not refute unless every
//! seed is deficient. Identities are different: a specialization is a ring
//! map, so one failing seed refutes.

mod anisotropy;
mod claims;
mod corollaries;
mod ranks;
mod report;

pub use anisotropy::{anisotropy_direct, anisotropy_via_duality, pairing_matrix};
pub use claims::{verify_claim, Claim};
pub use corollaries::corollary_suite;
pub use ranks::{
    boundary_lefschetz_report, boundary_sphere_lefschetz_check, local_hstar_report, quotient_hilbert,
    reflexive_lefschetz_check, reflexive_lefschetz_report, relative_image_dims,
    relative_lefschetz_check, relative_lefschetz_report, MapCheck,
};
pub use report::{
    CheckRecord, NamedVector, RankRecord, Status, VerificationReport, Witness, REPORT_SCHEMA,
};

use crate::algebra::{linear_element, ArtinianReduction, Element, ParameterMatrix};
use crate::error::Result;
use crate::field::{Field, FiniteField, Specialization};
use crate::integration::{enumerate_flags, FaceFlag};
use crate::lattice::{ConeMonomial, LatticePolytope};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldChoice {
    /// GF(2^k).
    Gf2k(u32),
    /// Z/p for a prime p.
    Prime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagStrategy {
    First,
    All,
    Count(usize),
}

impl FlagStrategy {
    /// Flags used to normalize the integration map. Only the first is used
    /// by the identity checks.
    pub fn select(self, p: &LatticePolytope) -> Vec<FaceFlag> {
        let flags = enumerate_flags(p);
        let n = match self {
            FlagStrategy::First => 1,
            FlagStrategy::All => flags.len(),
            FlagStrategy::Count(n) => n.max(1),
        };
        flags.into_iter().take(n).collect()
    }

    /// Flags compared by the flag independence check: at least two, three
    /// under the default strategy.
    pub fn select_for_comparison(self, p: &LatticePolytope) -> Vec<FaceFlag> {
        let flags = enumerate_flags(p);
        let n = match self {
            FlagStrategy::First => 3,
            FlagStrategy::All => flags.len(),
            FlagStrategy::Count(n) => n.max(2),
        };
        flags.into_iter().take(n).collect()
    }
}

/// What to run: exact symbolic work where supported, and the
/// specializations used everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunPlan {
    pub exact: bool,
    pub field: FieldChoice,
    pub seeds: Vec<u64>,
    pub flags: FlagStrategy,
}

impl RunPlan {
    /// `trials` consecutive seeds starting at `seed`.
    pub fn random(field: FieldChoice, seed: u64, trials: usize) -> Self {
        Self {
            exact: false,
            field,
            seeds: (0..trials as u64).map(|t| seed.wrapping_add(t)).collect(),
            flags: FlagStrategy::First,
        }
    }

    pub fn exact(seed: u64, trials: usize) -> Self {
        Self {
            exact: true,
            ..Self::random(FieldChoice::Gf2k(32), seed, trials)
        }
    }
}

/// Runs `$body` with `$f` bound to the backend named by a [`FieldChoice`].
macro_rules! with_field {
    ($choice:expr, |$f:ident| $body:expr) => {
        match $choice {
            $crate::lefschetz::FieldChoice::Gf2k(bits) => {
                let $f = $crate::field::Gf2k::new(bits)?;
                $body
            }
            $crate::lefschetz::FieldChoice::Prime(modulus) => {
                let $f = $crate::field::PrimeField::new(modulus)?;
                $body
            }
        }
    };
}
pub(crate) use with_field;

/// Θ and an independent ℓ at one seed.
pub(crate) fn specialize<'a, F: FiniteField>(
    p: &'a LatticePolytope,
    field: &F,
    seed: u64,
) -> Result<(ArtinianReduction<'a, F>, Element<F::Elem>)> {
    let spec = Specialization::new(field.clone(), seed);
    let theta = ParameterMatrix::specialized(&spec, p);
    let red = ArtinianReduction::new(p, theta)?;
    let ell = linear_element(p, field, &spec.lefschetz(p.num_lattice_points()));
    Ok((red, ell))
}

/// Nominal Schwartz–Zippel degree bound for desk-scale checks.
pub(crate) fn nominal_degree_bound(p: &LatticePolytope) -> u64 {
    let d = p.dim() as u64;
    4 * (d + 1) * (d + 1)
}

pub(crate) fn probabilistic<F: Field>(field: &F, degree_bound: u64, trials: usize) -> Status {
    let field_log2 = field.order_log2().unwrap_or(f64::INFINITY);
    let per_trial = (degree_bound as f64 / field_log2.exp2()).min(1.0);
    Status::VerifiedProbabilistic {
        failure_bound: per_trial.powi(trials.max(1) as i32),
        per_trial_bound: per_trial,
        degree_bound,
        field_log2,
    }
}

pub(crate) fn render_monomial(m: &ConeMonomial) -> String {
    format!("{:?}@{}", m.point.coords(), m.height)
}

pub(crate) fn render_vector<F: Field>(field: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| field.render(x)).collect()
}

/// The IDP gate shared by the Lefschetz claims.
pub(crate) fn idp_gate(p: &LatticePolytope) -> Option<String> {
    match p.is_idp() {
        (true, _) => None,
        (false, w) => Some(format!(
            "not IDP: {} is not a sum of height-one points",
            w.as_ref().map(render_monomial).unwrap_or_default()
        )),
    }
}
