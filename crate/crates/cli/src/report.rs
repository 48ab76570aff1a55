//! Serializable report payloads. Rationals are always emitted as strings
//! (`"3"`, `"-1/2"`), never as floats.

use serde::Serialize;
use trunc_poisson::cochain::Cochain as GenericCochain;
use trunc_poisson::{
    duality_report, fibre_product_table, homology, PoissonComplex, Rational, RingTable, TruncParams, TwistParams,
};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, Serialize)]
pub struct ReportEnvelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub params: ParamsEcho,
    pub payload: Payload,
    pub verification: Vec<Check>,
}

impl ReportEnvelope {
    pub fn all_passed(&self) -> bool {
        self.verification.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ParamsEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_range: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_range: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Cohomology(CohomologyPayload),
    Homology(HomologyPayload),
    Ring(RingPayload),
    Duality(DualityPayload),
    Sweep(SweepPayload),
    Verify(VerifyPayload),
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentativeEntry {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cochain: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeEntry {
    pub degree: usize,
    pub dimension: usize,
    pub cocycle_dim: usize,
    pub coboundary_rank: usize,
    pub representatives: Vec<RepresentativeEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyPayload {
    /// Dimensions of `HP^0, HP^1, HP^2`; all higher degrees vanish.
    pub dims: [usize; 3],
    pub cochain_dims: [usize; 3],
    pub euler_characteristic: i64,
    pub degrees: Vec<DegreeEntry>,
}

pub fn cohomology_payload(p: TruncParams, include_cochains: bool) -> Result<CohomologyPayload, CliError> {
    let cx = PoissonComplex::new(p);
    let mut degrees = Vec::new();
    for k in 0..=2 {
        let r = cx.cohomology(k)?;
        degrees.push(DegreeEntry {
            degree: k,
            dimension: r.dimension,
            cocycle_dim: r.cocycle_dim,
            coboundary_rank: r.coboundary_rank,
            representatives: r
                .representatives
                .iter()
                .map(|rep| RepresentativeEntry {
                    label: rep.label.clone(),
                    cochain: include_cochains.then(|| rep.cochain.to_string()),
                })
                .collect(),
        });
    }
    let dims = [degrees[0].dimension, degrees[1].dimension, degrees[2].dimension];
    let e = trunc_poisson::euler_dims(p);
    Ok(CohomologyPayload {
        dims,
        cochain_dims: [e.chi0, e.chi1, e.chi2],
        euler_characteristic: dims[0] as i64 - dims[1] as i64 + dims[2] as i64,
        degrees,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistEcho {
    pub kind: &'static str,
    pub alpha: String,
    pub beta: String,
}

impl TwistEcho {
    pub fn new(kind: &'static str, t: &TwistParams) -> Self {
        TwistEcho { kind, alpha: t.alpha.to_string(), beta: t.beta.to_string() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyPayload {
    pub twist: TwistEcho,
    pub dims: [usize; 3],
    pub chain_dims: [usize; 3],
    pub rank_partial1: usize,
    pub rank_partial2: usize,
    pub euler_characteristic: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<[Vec<String>; 3]>,
}

pub fn homology_payload(p: TruncParams, kind: &'static str, t: &TwistParams, include_reps: bool) -> HomologyPayload {
    let r = homology(p, t);
    HomologyPayload {
        twist: TwistEcho::new(kind, t),
        dims: r.dims,
        chain_dims: trunc_poisson::omega_dims(p),
        rank_partial1: r.ranks.0,
        rank_partial2: r.ranks.1,
        euler_characteristic: r.euler_characteristic(),
        representatives: include_reps
            .then(|| std::array::from_fn(|k| r.representatives[k].iter().map(ToString::to_string).collect())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RingBasisEntry {
    pub label: String,
    pub reference_label: String,
    pub degree: usize,
    pub representative: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RingPayload {
    pub basis: Vec<RingBasisEntry>,
    /// `products[x][y]` = coordinates of `x ⌣ y` in the basis above.
    pub products: Vec<Vec<Vec<String>>>,
    pub matches_reference: bool,
    pub graded_commutative: bool,
    pub associative: bool,
}

fn stringify(table: &RingTable) -> Vec<Vec<Vec<String>>> {
    table
        .products
        .iter()
        .map(|row| row.iter().map(|c| c.iter().map(ToString::to_string).collect()).collect())
        .collect()
}

pub fn ring_payload(p: TruncParams) -> Result<(RingPayload, RingTable, RingTable), CliError> {
    let cx = PoissonComplex::new(p);
    let table = cx.ring_table()?;
    let reference = fibre_product_table::<Rational>();
    let reps: Vec<GenericCochain<Rational>> =
        (0..=2).flat_map(|k| cx.canonical_representatives(k)).map(|r| r.cochain).collect();
    let rep_labels: Vec<String> =
        (0..=2).flat_map(|k| cx.canonical_representatives(k)).map(|r| r.label).collect();
    let basis = (0..table.dim())
        .map(|k| RingBasisEntry {
            label: table.basis_labels[k].clone(),
            reference_label: reference.basis_labels[k].clone(),
            degree: table.degrees[k],
            representative: if reps[k].degree() == 0 { reps[k].to_string() } else { rep_labels[k].clone() },
        })
        .collect();
    let payload = RingPayload {
        basis,
        products: stringify(&table),
        matches_reference: table.same_structure(&reference),
        graded_commutative: table.is_graded_commutative(),
        associative: table.is_associative(),
    };
    Ok((payload, table, reference))
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityRow {
    pub degree: usize,
    pub cohomology: usize,
    pub nakayama_homology: usize,
    /// `dim HP_{2-k}` with trivial coefficients.
    pub trivial_homology_complementary: usize,
    pub twisted_duality: bool,
    pub poincare_duality: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityPayload {
    pub nakayama_twist: TwistEcho,
    pub rows: Vec<DualityRow>,
    pub trivial_homology_dims: [usize; 3],
    pub twisted_duality_holds: bool,
    pub poincare_duality_fails: bool,
    pub cohomology_euler: i64,
    pub nakayama_euler: i64,
}

pub fn duality_payload(p: TruncParams) -> Result<DualityPayload, CliError> {
    let r = duality_report::<Rational>(p)?;
    let rows = (0..3)
        .map(|k| DualityRow {
            degree: k,
            cohomology: r.cohomology_dims[k],
            nakayama_homology: r.nakayama_dims[k],
            trivial_homology_complementary: r.trivial_dims[2 - k],
            twisted_duality: r.twisted_duality[k],
            poincare_duality: r.poincare_duality[k],
        })
        .collect();
    Ok(DualityPayload {
        nakayama_twist: TwistEcho::new("nakayama", &TwistParams::nakayama(p)),
        rows,
        trivial_homology_dims: r.trivial_dims,
        twisted_duality_holds: r.twisted_duality_holds(),
        poincare_duality_fails: r.poincare_fails(),
        cohomology_euler: r.cohomology_euler,
        nakayama_euler: r.nakayama_euler,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub a: usize,
    pub b: usize,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub euler: i64,
    /// Names of the theorem checks run on this row, `name=pass|fail`.
    pub theorem_checks: String,
    #[serde(skip)]
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepPayload {
    pub complex: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<&'static str>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyPayload {
    pub checks_run: usize,
    pub checks_passed: usize,
}
