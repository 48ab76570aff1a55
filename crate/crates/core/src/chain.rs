//! Poisson homology of `Λ(a,b)` with coefficients in the diagonal twist
//! modules `M_σ`.
//!
//! `M_σ ⊗ Ω^k` is identified with `Ω^k`, since `M_σ` is `Λ(a,b)` as a vector
//! space and acts on forms by ordinary multiplication. Bases:
//!
//! * `Ω^0`: `X^i Y^j`, `i < a`, `j < b`;
//! * `Ω^1`: `X^i Y^j dX` with `i <= a-2`, then `X^i Y^j dY` with `j <= b-2`;
//! * `Ω^2`: `X^i Y^j dX∧dY` with `i <= a-2`, `j <= b-2`.

use std::fmt;

use crate::algebra::{AlgebraElement, AlgebraError, TruncParams};
use crate::cochain::PoissonComplex;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormPart {
    Scalar,
    DX,
    DY,
    DXDY,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KaehlerBasisIndex {
    pub degree: usize,
    pub i: usize,
    pub j: usize,
    pub form: FormPart,
}

impl fmt::Display for KaehlerBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = crate::algebra::MonomialIndex::new(self.i, self.j);
        match self.form {
            FormPart::Scalar => write!(f, "{m}"),
            FormPart::DX => write!(f, "{m}⊗dX"),
            FormPart::DY => write!(f, "{m}⊗dY"),
            FormPart::DXDY => write!(f, "{m}⊗dX∧dY"),
        }
    }
}

/// Basis of `Ω^k` in layout order; empty for `k >= 3`.
pub fn kaehler_basis(p: TruncParams, degree: usize) -> Vec<KaehlerBasisIndex> {
    let (a, b) = (p.a(), p.b());
    let grid = |imax: usize, jmax: usize, form: FormPart| {
        (0..imax).flat_map(move |i| (0..jmax).map(move |j| KaehlerBasisIndex { degree, i, j, form }))
    };
    match degree {
        0 => grid(a, b, FormPart::Scalar).collect(),
        1 => grid(a - 1, b, FormPart::DX).chain(grid(a, b - 1, FormPart::DY)).collect(),
        2 => grid(a - 1, b - 1, FormPart::DXDY).collect(),
        _ => Vec::new(),
    }
}

/// Dimensions of `Ω^0, Ω^1, Ω^2` read off the bases.
pub fn omega_dims(p: TruncParams) -> [usize; 3] {
    let (a, b) = (p.a(), p.b());
    [a * b, (a - 1) * b + a * (b - 1), (a - 1) * (b - 1)]
}

/// Diagonal twist `(α, β)`: `σ(x) = q^α x`, `σ(y) = q^β y`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistParams<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Field> TwistParams<T> {
    pub fn new(alpha: T, beta: T) -> Self {
        TwistParams { alpha, beta }
    }

    pub fn trivial() -> Self {
        TwistParams { alpha: T::zero(), beta: T::zero() }
    }

    /// The Nakayama twist `(1-b, a-1)`.
    pub fn nakayama(p: TruncParams) -> Self {
        TwistParams { alpha: T::from_int(1 - p.b() as i64), beta: T::from_int(p.a() as i64 - 1) }
    }
}

impl<T: Field> fmt::Display for TwistParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// Which generator a module bracket is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
}

/// `{X^iY^j, X}_σ = -(j+α) X^{i+1}Y^j` and `{X^iY^j, Y}_σ = (i-β) X^iY^{j+1}`,
/// extended linearly and truncated.
pub fn module_bracket<T: Field>(t: &TwistParams<T>, m: &AlgebraElement<T>, g: Generator) -> AlgebraElement<T> {
    let p = m.params();
    AlgebraElement::from_terms(
        p,
        m.terms().map(|(mon, c)| match g {
            Generator::X => {
                let w = -(T::from_int(mon.j as i64) + t.alpha.clone());
                (w * c.clone(), mon.i + 1, mon.j)
            }
            Generator::Y => {
                let w = T::from_int(mon.i as i64) - t.beta.clone();
                (w * c.clone(), mon.i, mon.j + 1)
            }
        }),
    )
}

/// `{m, u}_σ` for an arbitrary algebra element `u`, using that the module
/// bracket is a derivation in its second argument.
pub fn module_bracket_with<T: Field>(
    t: &TwistParams<T>,
    m: &AlgebraElement<T>,
    u: &AlgebraElement<T>,
) -> Result<AlgebraElement<T>, AlgebraError> {
    let p = m.params();
    if u.params() != p {
        return Err(AlgebraError::ParamMismatch(p, u.params()));
    }
    Ok(AlgebraElement::from_terms(p, module_bracket_terms(p, t, &owned_terms(m), &owned_terms(u))))
}

/// Coefficient-exponent triples `(c, i, j)`; entries outside the algebra
/// are dropped when converted back to an element.
type Terms<T> = Vec<(T, usize, usize)>;

fn owned_terms<T: Field>(e: &AlgebraElement<T>) -> Terms<T> {
    e.terms().map(|(m, c)| (c.clone(), m.i, m.j)).collect()
}

fn module_bracket_terms<T: Field>(p: TruncParams, t: &TwistParams<T>, m: &[(T, usize, usize)], u: &[(T, usize, usize)]) -> Terms<T> {
    // {X^iY^j, X^kY^l}_σ = (l(i-β) - k(j+α)) X^{i+k}Y^{j+l}
    let mut out = Vec::new();
    for (cm, i, j) in m {
        for (cu, k, l) in u {
            if i + k >= p.a() || j + l >= p.b() {
                continue;
            }
            let w = T::from_int(*l as i64) * (T::from_int(*i as i64) - t.beta.clone())
                - T::from_int(*k as i64) * (T::from_int(*j as i64) + t.alpha.clone());
            if !w.is_zero() {
                out.push((w * cm.clone() * cu.clone(), i + k, j + l));
            }
        }
    }
    out
}

fn partial_x_terms<T: Field>(u: &[(T, usize, usize)]) -> Terms<T> {
    u.iter().filter(|e| e.1 > 0).map(|(c, i, j)| (T::from_int(*i as i64) * c.clone(), i - 1, *j)).collect()
}

fn partial_y_terms<T: Field>(u: &[(T, usize, usize)]) -> Terms<T> {
    u.iter().filter(|e| e.2 > 0).map(|(c, i, j)| (T::from_int(*j as i64) * c.clone(), *i, j - 1)).collect()
}

/// Appends the terms of `sign * x * y`.
fn push_products<T: Field>(p: TruncParams, out: &mut Terms<T>, sign: &T, x: &[(T, usize, usize)], y: &[(T, usize, usize)]) {
    for (cx, i, j) in x {
        for (cy, k, l) in y {
            if i + k < p.a() && j + l < p.b() {
                out.push((sign.clone() * cx.clone() * cy.clone(), i + k, j + l));
            }
        }
    }
}

/// A one-form `f dX + g dY` in `Ω^1`, normalized so that `f` has no
/// `X^{a-1}` terms and `g` no `Y^{b-1}` terms (`X^{a-1}dX = Y^{b-1}dY = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm<T> {
    pub dx: AlgebraElement<T>,
    pub dy: AlgebraElement<T>,
}

impl<T: Field> OneForm<T> {
    pub fn new(dx: AlgebraElement<T>, dy: AlgebraElement<T>) -> Self {
        let p = dx.params();
        let mut f = dx.into_coeffs();
        let mut g = dy.into_coeffs();
        for j in 0..p.b() {
            f[p.index(p.a() - 1, j)] = T::zero();
        }
        for i in 0..p.a() {
            g[p.index(i, p.b() - 1)] = T::zero();
        }
        let dx = AlgebraElement::from_coeffs(p, f).expect("length preserved");
        let dy = AlgebraElement::from_coeffs(p, g).expect("length preserved");
        OneForm { dx, dy }
    }

    /// The exterior derivative `du`.
    pub fn exterior_d(u: &AlgebraElement<T>) -> Self {
        let p = u.params();
        let dx = AlgebraElement::from_terms(
            p,
            u.terms().filter(|(m, _)| m.i > 0).map(|(m, c)| (T::from_int(m.i as i64) * c.clone(), m.i - 1, m.j)),
        );
        let dy = AlgebraElement::from_terms(
            p,
            u.terms().filter(|(m, _)| m.j > 0).map(|(m, c)| (T::from_int(m.j as i64) * c.clone(), m.i, m.j - 1)),
        );
        Self::new(dx, dy)
    }

    /// `m ⊗ ω`, i.e. `m·ω`.
    pub fn times(&self, m: &AlgebraElement<T>) -> Result<Self, AlgebraError> {
        Ok(Self::new(m.multiply(&self.dx)?, m.multiply(&self.dy)?))
    }

    /// Nonzero entries of [`OneForm::coordinates`].
    pub fn sparse_coordinates(&self) -> Vec<(usize, T)> {
        let p = self.dx.params();
        let split = (p.a() - 1) * p.b();
        let dx = self.dx.terms().filter(|(m, _)| m.i + 1 < p.a()).map(|(m, c)| (m.i * p.b() + m.j, c.clone()));
        let dy =
            self.dy.terms().filter(|(m, _)| m.j + 1 < p.b()).map(|(m, c)| (split + m.i * (p.b() - 1) + m.j, c.clone()));
        dx.chain(dy).collect()
    }

    pub fn coordinates(&self) -> Vec<T> {
        let p = self.dx.params();
        kaehler_basis(p, 1)
            .into_iter()
            .map(|k| match k.form {
                FormPart::DX => self.dx.coeff(k.i, k.j),
                _ => self.dy.coeff(k.i, k.j),
            })
            .collect()
    }
}

impl<T: Field> std::ops::Add for &OneForm<T> {
    type Output = OneForm<T>;

    fn add(self, rhs: Self) -> OneForm<T> {
        OneForm { dx: &self.dx + &rhs.dx, dy: &self.dy + &rhs.dy }
    }
}

impl<T: Field> std::ops::Sub for &OneForm<T> {
    type Output = OneForm<T>;

    fn sub(self, rhs: Self) -> OneForm<T> {
        OneForm { dx: &self.dx - &rhs.dx, dy: &self.dy - &rhs.dy }
    }
}

/// `∂_1(m ⊗ du) = {m, u}_σ`.
pub fn boundary1<T: Field>(t: &TwistParams<T>, m: &AlgebraElement<T>, u: &AlgebraElement<T>) -> Result<AlgebraElement<T>, AlgebraError> {
    module_bracket_with(t, m, u)
}

/// `∂_2(m ⊗ du∧dv) = {m,u}_σ ⊗ dv - {m,v}_σ ⊗ du - m ⊗ d{u,v}`.
pub fn boundary2<T: Field>(
    t: &TwistParams<T>,
    m: &AlgebraElement<T>,
    u: &AlgebraElement<T>,
    v: &AlgebraElement<T>,
) -> Result<OneForm<T>, AlgebraError> {
    let p = m.params();
    let uv = owned_terms(&u.bracket(v)?);
    if m.params() != u.params() {
        return Err(AlgebraError::ParamMismatch(p, u.params()));
    }
    let (m, u, v) = (owned_terms(m), owned_terms(u), owned_terms(v));
    let mu = module_bracket_terms(p, t, &m, &u);
    let mv = module_bracket_terms(p, t, &m, &v);
    let (one, minus) = (T::one(), -T::one());
    let mut dx = Vec::new();
    push_products(p, &mut dx, &one, &mu, &partial_x_terms(&v));
    push_products(p, &mut dx, &minus, &mv, &partial_x_terms(&u));
    push_products(p, &mut dx, &minus, &m, &partial_x_terms(&uv));
    let mut dy = Vec::new();
    push_products(p, &mut dy, &one, &mu, &partial_y_terms(&v));
    push_products(p, &mut dy, &minus, &mv, &partial_y_terms(&u));
    push_products(p, &mut dy, &minus, &m, &partial_y_terms(&uv));
    Ok(OneForm::new(AlgebraElement::from_terms(p, dx), AlgebraElement::from_terms(p, dy)))
}

/// Matrix of `∂_1: Ω^1 -> Ω^0`.
pub fn partial1_matrix<T: Field>(p: TruncParams, t: &TwistParams<T>) -> Matrix<T> {
    // same as `boundary1` on basis forms, without dense intermediates
    let columns: Vec<Vec<(usize, T)>> = kaehler_basis(p, 1)
        .into_iter()
        .map(|k| {
            let g = if k.form == FormPart::DX { (T::one(), 1, 0) } else { (T::one(), 0, 1) };
            module_bracket_terms(p, t, &[(T::one(), k.i, k.j)], &[g])
                .into_iter()
                .map(|(c, i, j)| (p.index(i, j), c))
                .collect()
        })
        .collect();
    Matrix::from_sparse_columns(p.dim(), columns)
}

/// Matrix of `∂_2: Ω^2 -> Ω^1`, from the general boundary formula.
pub fn partial2_matrix<T: Field>(p: TruncParams, t: &TwistParams<T>) -> Matrix<T> {
    let x = AlgebraElement::x(p);
    let y = AlgebraElement::y(p);
    let columns: Vec<Vec<(usize, T)>> = kaehler_basis(p, 2)
        .into_iter()
        .map(|k| {
            let m = AlgebraElement::monomial(p, k.i, k.j);
            boundary2(t, &m, &x, &y).expect("same algebra").sparse_coordinates()
        })
        .collect();
    Matrix::from_sparse_columns(omega_dims(p)[1], columns)
}

/// Closed form
/// `∂_2(X^iY^j dX∧dY) = -(j+α+1) X^{i+1}Y^j dY - (i-β+1) X^iY^{j+1} dX`.
pub fn partial2_closed_form<T: Field>(p: TruncParams, t: &TwistParams<T>) -> Matrix<T> {
    let columns: Vec<Vec<(usize, T)>> = kaehler_basis(p, 2)
        .into_iter()
        .map(|k| {
            let (i, j) = (k.i, k.j);
            let cy = -(T::from_int(j as i64 + 1) + t.alpha.clone());
            let cx = -(T::from_int(i as i64 + 1) - t.beta.clone());
            OneForm::new(AlgebraElement::term(p, cx, i, j + 1), AlgebraElement::term(p, cy, i + 1, j)).sparse_coordinates()
        })
        .collect();
    Matrix::from_sparse_columns(omega_dims(p)[1], columns)
}

/// An element of `M_σ ⊗ Ω^k` in the Kähler basis of that degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainElement<T> {
    pub params: TruncParams,
    pub degree: usize,
    pub coeffs: Vec<T>,
}

impl<T: Field> ChainElement<T> {
    pub fn from_coordinates(params: TruncParams, degree: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), kaehler_basis(params, degree).len());
        ChainElement { params, degree, coeffs }
    }
}

impl<T: Field> fmt::Display for ChainElement<T> {
    /// Highest basis element first, e.g. `X*Y⊗dY - 2*Y⊗dX`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = kaehler_basis(self.params, self.degree);
        let terms: Vec<_> = basis.iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in terms.into_iter().rev().enumerate() {
            let negative = *c < T::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if magnitude == T::one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{magnitude}*{k}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomologyReport<T> {
    pub params: TruncParams,
    pub twist: TwistParams<T>,
    pub dims: [usize; 3],
    /// `(rank ∂_1, rank ∂_2)`.
    pub ranks: (usize, usize),
    pub representatives: [Vec<ChainElement<T>>; 3],
}

impl<T> HomologyReport<T> {
    pub fn euler_characteristic(&self) -> i64 {
        self.dims[0] as i64 - self.dims[1] as i64 + self.dims[2] as i64
    }

    /// `HP_k` vanishes for `k >= 3` because `Ω^k` does.
    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }
}

/// Vectors of `within` extending `sub` to a basis of `sub + span(within)`,
/// chosen greedily in order.
fn complement_in<T: Field>(sub: &Subspace<T>, within: &[Vec<T>]) -> Vec<Vec<T>> {
    sub.extend_greedily(within).into_iter().map(|k| within[k].clone()).collect()
}

pub fn homology<T: Field>(p: TruncParams, t: &TwistParams<T>) -> HomologyReport<T> {
    let d1 = partial1_matrix(p, t);
    let d2 = partial2_matrix(p, t);
    let [n0, n1, _] = omega_dims(p);

    let image1 = d1.column_space();
    let image2 = d2.column_space();
    let kernel1 = d1.nullspace();
    let kernel2 = d2.nullspace();
    let (r1, r2) = (image1.dim(), image2.dim());

    let standard: Vec<Vec<T>> = Subspace::<T>::standard(n0).vectors().to_vec();
    let reps0 = complement_in(&image1, &standard);
    let reps1 = complement_in(&image2, kernel1.vectors());
    let reps2 = kernel2.vectors().to_vec();

    let wrap = |degree: usize, vs: Vec<Vec<T>>| {
        vs.into_iter().map(|v| ChainElement::from_coordinates(p, degree, v)).collect::<Vec<_>>()
    };
    HomologyReport {
        params: p,
        twist: t.clone(),
        dims: [n0 - r1, n1 - r1 - r2, kernel2.dim()],
        ranks: (r1, r2),
        representatives: [wrap(0, reps0), wrap(1, reps1), wrap(2, reps2)],
    }
}

/// `dim HP_k(M_σ)` for `k = 0, 1, 2`, from the ranks of `∂_1` and `∂_2` alone.
pub fn homology_dims<T: Field>(p: TruncParams, t: &TwistParams<T>) -> [usize; 3] {
    let r1 = partial1_matrix(p, t).rank();
    let r2 = partial2_matrix(p, t).rank();
    let [n0, n1, n2] = omega_dims(p);
    [n0 - r1, n1 - r1 - r2, n2 - r2]
}

/// Degreewise comparison of `HP^k` with `HP_k(M_ν)` and with `HP_{2-k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub params: TruncParams,
    pub cohomology_dims: [usize; 3],
    pub nakayama_dims: [usize; 3],
    pub trivial_dims: [usize; 3],
    /// `dim HP^k == dim HP_k(M_ν)`.
    pub twisted_duality: [bool; 3],
    /// `dim HP^k == dim HP_{2-k}`.
    pub poincare_duality: [bool; 3],
    pub cohomology_euler: i64,
    pub nakayama_euler: i64,
}

impl DualityReport {
    pub fn twisted_duality_holds(&self) -> bool {
        self.twisted_duality.iter().all(|&x| x)
    }

    /// Poincaré duality fails in degree 0 or 2.
    pub fn poincare_fails(&self) -> bool {
        !self.poincare_duality[0] || !self.poincare_duality[2]
    }
}

pub fn duality_report<T: Field>(p: TruncParams) -> Result<DualityReport, crate::cochain::CochainError> {
    let cx = PoissonComplex::<T>::new(p);
    let mut cohomology_dims = [0; 3];
    for (k, d) in cohomology_dims.iter_mut().enumerate() {
        *d = cx.cohomology(k)?.dimension;
    }
    let nakayama_dims = homology_dims(p, &TwistParams::<T>::nakayama(p));
    let trivial_dims = homology_dims(p, &TwistParams::<T>::trivial());
    let euler = |d: [usize; 3]| d[0] as i64 - d[1] as i64 + d[2] as i64;
    Ok(DualityReport {
        params: p,
        cohomology_dims,
        nakayama_dims,
        trivial_dims,
        twisted_duality: std::array::from_fn(|k| cohomology_dims[k] == nakayama_dims[k]),
        poincare_duality: std::array::from_fn(|k| cohomology_dims[k] == trivial_dims[2 - k]),
        cohomology_euler: euler(cohomology_dims),
        nakayama_euler: euler(nakayama_dims),
    })
}
