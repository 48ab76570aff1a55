//! Structural checks run by `verify`, one named pass/fail line each.
//!
//! Randomized checks draw from a ChaCha stream seeded by `(a, b)`, so the
//! same instance always produces the same report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trunc_poisson::chain::{
    module_bracket, module_bracket_with, partial1_matrix, partial2_closed_form, partial2_matrix, Generator,
};
use trunc_poisson::cochain::{chi1_basis, first_cocycle_violation};
use trunc_poisson::{
    cup, delta0_matrix, delta1_matrix, euler_dims, fibre_product_table, hamiltonian, homology_dims, normalize_one_cocycle,
    AlgebraElement, Biderivation, Cochain, Derivation, Field, PoissonComplex, Rational, TruncParams, TwistParams,
};

use crate::report::Check;

const RANDOM_SAMPLES: usize = 100;
const RANDOM_TWISTS: usize = 50;
/// Above this algebra dimension the twist-sweeping checks use fewer twists;
/// building a pair of dense boundary matrices dominates their cost.
const FULL_TWIST_MAX_DIM: usize = 100;
const REDUCED_TWISTS: usize = 10;
/// Expected number of terms in random elements for Leibniz-type identities.
const SPARSE_TERMS: usize = 12;
/// Above this algebra dimension Jacobi is checked on sampled triples.
const FULL_JACOBI_MAX_DIM: usize = 36;
const JACOBI_SAMPLES: usize = 5000;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn rng_for(p: TruncParams, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(((p.a() as u64) << 32) ^ (p.b() as u64) ^ (salt << 48))
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-7..8)) / q(rng.gen_range(1..5))
}

pub fn random_element(rng: &mut ChaCha8Rng, p: TruncParams) -> AlgebraElement {
    let coeffs = (0..p.dim()).map(|_| if rng.gen_bool(0.5) { random_rational(rng) } else { q(0) }).collect();
    AlgebraElement::from_coeffs(p, coeffs).expect("length matches")
}

/// An element with about `terms` nonzero coefficients.
pub fn sparse_element(rng: &mut ChaCha8Rng, p: TruncParams, terms: usize) -> AlgebraElement {
    let density = (terms as f64 / p.dim() as f64).min(0.5);
    let coeffs = (0..p.dim()).map(|_| if rng.gen_bool(density) { random_rational(rng) } else { q(0) }).collect();
    AlgebraElement::from_coeffs(p, coeffs).expect("length matches")
}

pub fn random_derivation(rng: &mut ChaCha8Rng, p: TruncParams) -> Derivation {
    let n = euler_dims(p).chi1;
    // sparse so that a fair share of samples are cocycles
    let coords: Vec<Rational> =
        (0..n).map(|_| if rng.gen_bool(2.0 / n as f64) { random_rational(rng) } else { q(0) }).collect();
    Derivation::from_coordinates(p, &coords).expect("length matches")
}

pub fn random_twist(rng: &mut ChaCha8Rng) -> TwistParams {
    TwistParams::new(random_rational(rng), random_rational(rng))
}

/// A cocycle `c10·d_{1,0} + c01·d'_{0,1} + δ_0(λ)` with its known class.
pub fn random_cocycle(rng: &mut ChaCha8Rng, p: TruncParams) -> (Rational, Rational, Derivation) {
    let c10 = random_rational(rng);
    let c01 = random_rational(rng);
    let lam = random_element(rng, p);
    let d = &(&Derivation::d(p, 1, 0).scale(&c10) + &Derivation::d_prime(p, 0, 1).scale(&c01)) + &hamiltonian(&lam);
    (c10, c01, d)
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    (0..n).map(|x| if x == k { q(1) } else { q(0) }).collect()
}

fn check_delta_squared(p: TruncParams) -> Check {
    let ok = delta1_matrix::<Rational>(p).mul(&delta0_matrix(p)).map(|m| m.is_zero()).unwrap_or(false);
    Check::new("delta1_delta0_zero", ok, "δ_1·δ_0 = 0 as matrices")
}

fn random_twist_count(p: TruncParams) -> usize {
    if p.dim() <= FULL_TWIST_MAX_DIM {
        RANDOM_TWISTS
    } else {
        REDUCED_TWISTS
    }
}

fn check_partial_squared(p: TruncParams) -> Check {
    let mut rng = rng_for(p, 1);
    let count = random_twist_count(p);
    let mut twists = vec![TwistParams::trivial(), TwistParams::nakayama(p)];
    twists.extend((0..count).map(|_| random_twist(&mut rng)));
    let failed = twists
        .iter()
        .filter(|t| !partial1_matrix(p, t).mul(&partial2_matrix(p, t)).map(|m| m.is_zero()).unwrap_or(false))
        .count();
    Check::new(
        "partial1_partial2_zero",
        failed == 0,
        format!("∂_1·∂_2 = 0 for trivial, Nakayama and {count} random twists ({failed} failures)"),
    )
}

fn check_partial2_closed_form(p: TruncParams) -> Check {
    let mut rng = rng_for(p, 2);
    let mut twists = vec![TwistParams::trivial(), TwistParams::nakayama(p)];
    let count = random_twist_count(p) / 5;
    twists.extend((0..count).map(|_| random_twist(&mut rng)));
    let ok = twists.iter().all(|t| partial2_matrix(p, t) == partial2_closed_form(p, t));
    Check::new(
        "partial2_closed_form",
        ok,
        format!("general ∂_2 agrees with the expanded closed form for trivial, Nakayama and {count} random twists"),
    )
}

fn check_jacobi(p: TruncParams) -> Check {
    let monomials: Vec<AlgebraElement> = p.monomials().map(|m| AlgebraElement::monomial(p, m.i, m.j)).collect();
    let jacobi = |e: &AlgebraElement, f: &AlgebraElement, g: &AlgebraElement| {
        let br = |u: &AlgebraElement, v: &AlgebraElement| u.bracket(v).expect("same algebra");
        let s = &(&br(e, &br(f, g)) + &br(f, &br(g, e))) + &br(g, &br(e, f));
        s.is_zero()
    };
    let n = monomials.len();
    let (ok, detail) = if n <= FULL_JACOBI_MAX_DIM {
        // the bracket of monomials is a multiple of a monomial, so tabulate it once
        let table: Vec<Vec<AlgebraElement>> =
            monomials.iter().map(|u| monomials.iter().map(|v| u.bracket(v).expect("same algebra")).collect()).collect();
        let bracket_with = |x: usize, v: &AlgebraElement| -> AlgebraElement {
            v.terms().fold(AlgebraElement::zero(p), |acc, (m, c)| &acc + &table[x][p.index(m.i, m.j)].scale(c))
        };
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let s = &(&bracket_with(x, &table[y][z]) + &bracket_with(y, &table[z][x])) + &bracket_with(z, &table[x][y]);
                    s.is_zero()
                })
            })
        });
        (ok, format!("all {} monomial triples", n * n * n))
    } else {
        let mut rng = rng_for(p, 3);
        let ok = (0..JACOBI_SAMPLES).all(|_| {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            jacobi(&monomials[x], &monomials[y], &monomials[z])
        });
        (ok, format!("{JACOBI_SAMPLES} sampled monomial triples"))
    };
    Check::new("jacobi", ok, detail)
}

fn check_leibniz(p: TruncParams) -> Check {
    let mut rng = rng_for(p, 4);
    let ok = (0..RANDOM_SAMPLES).all(|_| {
        let u = sparse_element(&mut rng, p, SPARSE_TERMS);
        let v = sparse_element(&mut rng, p, SPARSE_TERMS);
        let w = sparse_element(&mut rng, p, SPARSE_TERMS);
        let lhs = u.multiply(&v).unwrap().bracket(&w).unwrap();
        let rhs = &u.multiply(&v.bracket(&w).unwrap()).unwrap() + &u.bracket(&w).unwrap().multiply(&v).unwrap();
        lhs == rhs
    });
    Check::new("leibniz", ok, format!("{{uv, w}} = u{{v, w}} + {{u, w}}v on {RANDOM_SAMPLES} random triples"))
}

fn check_module_bracket(p: TruncParams) -> Check {
    let t = TwistParams::trivial();
    let ok = p.monomials().all(|m| {
        let e = AlgebraElement::monomial(p, m.i, m.j);
        module_bracket(&t, &e, Generator::X) == e.bracket(&AlgebraElement::x(p)).unwrap()
            && module_bracket(&t, &e, Generator::Y) == e.bracket(&AlgebraElement::y(p)).unwrap()
    });
    let mut rng = rng_for(p, 5);
    let tw = random_twist(&mut rng);
    let leibniz = (0..20).all(|_| {
        let m = sparse_element(&mut rng, p, SPARSE_TERMS);
        let u = sparse_element(&mut rng, p, SPARSE_TERMS);
        let g = AlgebraElement::x(p);
        let lhs = module_bracket_with(&tw, &m.multiply(&u).unwrap(), &g).unwrap();
        let rhs = &m.multiply(&u.bracket(&g).unwrap()).unwrap()
            + &module_bracket_with(&tw, &m, &g).unwrap().multiply(&u).unwrap();
        let v = sparse_element(&mut rng, p, SPARSE_TERMS);
        let generators = module_bracket_with(&tw, &m, &g).unwrap() == module_bracket(&tw, &m, Generator::X)
            && module_bracket_with(&tw, &m, &AlgebraElement::y(p)).unwrap() == module_bracket(&tw, &m, Generator::Y);
        let second = module_bracket_with(&tw, &m, &u.multiply(&v).unwrap()).unwrap()
            == &u.multiply(&module_bracket_with(&tw, &m, &v).unwrap()).unwrap()
                + &module_bracket_with(&tw, &m, &u).unwrap().multiply(&v).unwrap();
        lhs == rhs && generators && second
    });
    Check::new(
        "module_bracket",
        ok && leibniz,
        "untwisted module bracket equals the algebra bracket; Leibniz in both arguments for a random twist",
    )
}

fn check_cocycle_equation(p: TruncParams) -> Check {
    let m = delta1_matrix::<Rational>(p);
    let mut rng = rng_for(p, 6);
    let mut samples = chi1_basis::<Rational>(p);
    samples.extend((0..RANDOM_SAMPLES).map(|_| random_derivation(&mut rng, p)));
    let disagreements = samples
        .iter()
        .filter(|d| {
            let kernel = m.mul_vec(&d.coordinates()).unwrap().iter().all(|x| *x == q(0));
            kernel != first_cocycle_violation(d).is_none()
        })
        .count();
    Check::new(
        "cocycle_predicate_matches_kernel",
        disagreements == 0,
        format!("{} derivations, {disagreements} disagreements", samples.len()),
    )
}

fn check_normalization(p: TruncParams) -> Check {
    let mut rng = rng_for(p, 7);
    let ok = (0..RANDOM_SAMPLES).all(|_| {
        let (c10, c01, d) = random_cocycle(&mut rng, p);
        match normalize_one_cocycle(&d) {
            Ok(n) => {
                let rebuilt = &(&Derivation::d(p, 1, 0).scale(&n.c10) + &Derivation::d_prime(p, 0, 1).scale(&n.c01))
                    + &hamiltonian(&n.potential);
                n.c10 == c10 && n.c01 == c01 && rebuilt == d
            }
            Err(_) => false,
        }
    });
    Check::new("normalization_identity", ok, format!("{RANDOM_SAMPLES} random cocycles reconstructed exactly"))
}

fn check_cohomology(p: TruncParams, cx: &PoissonComplex) -> Vec<Check> {
    let dims: Result<Vec<usize>, _> = (0..=3).map(|k| cx.cohomology(k).map(|r| r.dimension)).collect();
    let (dims_ok, detail) = match &dims {
        Ok(d) => (d == &[2, 2, 1, 0], format!("dims HP^0..HP^3 = {d:?}")),
        Err(e) => (false, e.to_string()),
    };
    let n = p.dim();
    let centre_ok = cx.centre().vectors() == [unit(n, 0), unit(n, p.index(p.a() - 1, p.b() - 1))];
    let f11 = Biderivation::f(p, 1, 1).coordinates();
    let not_exact = matches!(cx.delta1().solve(&f11), Ok(None));
    let e = euler_dims(p);
    let euler_ok = dims.as_ref().map(|d| d[0] as i64 - d[1] as i64 + d[2] as i64 == 1).unwrap_or(false)
        && e.euler_characteristic() == 1;
    vec![
        Check::new("cohomology_dims", dims_ok, detail),
        Check::new("centre_basis", centre_ok, "Ker δ_0 reduces to {1, X^{a-1}Y^{b-1}}"),
        Check::new("f11_not_exact", not_exact, "δ_1(P)(X∧Y) = XY has no solution"),
        Check::new("euler_cohomology", euler_ok, "dim HP^0 - dim HP^1 + dim HP^2 = 1 = χ^0 - χ^1 + χ^2"),
    ]
}

fn check_ring(p: TruncParams, cx: &PoissonComplex) -> Vec<Check> {
    let reference = fibre_product_table::<Rational>();
    let (matches, comm, detail) = match cx.ring_table() {
        Ok(t) => {
            let diffs = t.differences(&reference);
            (t.same_structure(&reference), t.is_graded_commutative(), format!("{} differing products", diffs.len()))
        }
        Err(e) => (false, false, e.to_string()),
    };
    let v = Cochain::Derivation(Derivation::d(p, 1, 0));
    let w = Cochain::Derivation(Derivation::d_prime(p, 0, 1));
    let cochain_level = cup(&v, &w).ok() == Some(Cochain::Biderivation(Biderivation::f(p, 1, 1)));
    vec![
        Check::new("ring_matches_fibre_product", matches, detail),
        Check::new("cup_graded_commutative", comm, "x⌣y = (-1)^{|x||y|} y⌣x on basis classes"),
        Check::new("cup_d10_d01_is_f11", cochain_level, "d_{1,0} ⌣ d'_{0,1} = f_{1,1} at cochain level"),
    ]
}

fn check_homology(p: TruncParams) -> Vec<Check> {
    let (a, b) = (p.a(), p.b());
    let euler = |d: [usize; 3]| d[0] as i64 - d[1] as i64 + d[2] as i64;
    let trivial = homology_dims(p, &TwistParams::trivial());
    let nakayama = homology_dims(p, &TwistParams::nakayama(p));
    let regime = homology_dims(p, &TwistParams::new(-q(b as i64), q(a as i64)));
    let mut rng = rng_for(p, 8);
    let random_eulers_ok = (0..10).all(|_| euler(homology_dims(p, &random_twist(&mut rng))) == 1);
    vec![
        Check::new(
            "trace_lemma",
            trivial[0] == a + b - 1,
            format!("dim HP_0 = {} (expected a+b-1 = {})", trivial[0], a + b - 1),
        ),
        Check::new(
            "twisted_duality",
            nakayama == [2, 2, 1],
            format!("dims HP_k(M_ν) = {:?}, dims HP^k = [2, 2, 1]", nakayama),
        ),
        Check::new(
            "poincare_duality_fails",
            trivial[0] >= 3 && trivial[0] != 1,
            format!("dim HP_0 = {} vs dim HP^2 = 1", trivial[0]),
        ),
        Check::new(
            "twist_regime",
            regime[0] == 1 && regime[2] == 0,
            format!("twist (-b, a): dims {:?}", regime),
        ),
        Check::new(
            "euler_homology",
            [trivial, nakayama, regime].into_iter().all(|d| euler(d) == 1) && random_eulers_ok,
            "h0 - h1 + h2 = 1 for trivial, Nakayama, (-b, a) and 10 random twists",
        ),
    ]
}

/// Every structural check for one instance, in a fixed order.
pub fn verify_instance(p: TruncParams) -> Vec<Check> {
    let cx = PoissonComplex::new(p);
    let mut checks = vec![
        check_delta_squared(p),
        check_partial_squared(p),
        check_partial2_closed_form(p),
        check_jacobi(p),
        check_leibniz(p),
        check_module_bracket(p),
        check_cocycle_equation(p),
        check_normalization(p),
    ];
    checks.extend(check_cohomology(p, &cx));
    checks.extend(check_ring(p, &cx));
    checks.extend(check_homology(p));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_instance_passes() {
        let checks = verify_instance(TruncParams::new(2, 2).unwrap());
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(checks.len(), 20);
    }

    #[test]
    fn random_derivations_hit_both_answers() {
        let p = TruncParams::new(4, 4).unwrap();
        let mut rng = rng_for(p, 0);
        let samples: Vec<bool> =
            (0..200).map(|_| first_cocycle_violation(&random_derivation(&mut rng, p)).is_none()).collect();
        assert!(samples.iter().any(|&x| x));
        assert!(samples.iter().any(|&x| !x));
    }
}
