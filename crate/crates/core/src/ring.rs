//! Multiplication tables of small graded algebras, and the reference ring
//! `C[U]/(U^2) ×_C C<V,W>/(V^2, VW+WV, W^2)` built from its presentation.

use crate::scalar::Field;

/// Structure constants of a finite-dimensional graded algebra in a fixed
/// basis: `products[x][y]` holds the coordinates of `x·y`.
#[derive(Debug, Clone, PartialEq)]
pub struct RingTable<T> {
    pub basis_labels: Vec<String>,
    pub degrees: Vec<usize>,
    pub products: Vec<Vec<Vec<T>>>,
}

impl<T: Field> RingTable<T> {
    /// Panics if the table is not `n × n × n` for `n` labels.
    pub fn new(basis_labels: Vec<String>, degrees: Vec<usize>, products: Vec<Vec<Vec<T>>>) -> Self {
        let n = basis_labels.len();
        assert_eq!(degrees.len(), n);
        assert!(products.len() == n && products.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == n)));
        RingTable { basis_labels, degrees, products }
    }

    /// Labels for `(1, X^{a-1}Y^{b-1}, [d_{1,0}], [d'_{0,1}], [f_{1,1}])`.
    pub fn standard_labels() -> Vec<String> {
        ["1", "t", "v", "w", "m"].into_iter().map(String::from).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn product(&self, x: usize, y: usize) -> &[T] {
        &self.products[x][y]
    }

    /// `x·y = (-1)^{|x||y|} y·x` for all basis pairs.
    pub fn is_graded_commutative(&self) -> bool {
        (0..self.dim()).all(|x| {
            (0..self.dim()).all(|y| {
                let sign = if self.degrees[x] * self.degrees[y] % 2 == 1 { -T::one() } else { T::one() };
                self.products[x][y].iter().zip(&self.products[y][x]).all(|(l, r)| *l == sign.clone() * r.clone())
            })
        })
    }

    /// Products land in the degree of the sum, or vanish.
    pub fn respects_grading(&self) -> bool {
        (0..self.dim()).all(|x| {
            (0..self.dim()).all(|y| {
                let d = self.degrees[x] + self.degrees[y];
                self.products[x][y].iter().enumerate().all(|(k, c)| c.is_zero() || self.degrees[k] == d)
            })
        })
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let times = |u: &[T], v: &[T]| -> Vec<T> {
            let mut out = vec![T::zero(); n];
            for (x, cu) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (y, cv) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (k, s) in self.products[x][y].iter().enumerate() {
                        out[k] = out[k].clone() + cu.clone() * cv.clone() * s.clone();
                    }
                }
            }
            out
        };
        let unit = |k: usize| (0..n).map(|x| if x == k { T::one() } else { T::zero() }).collect::<Vec<T>>();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let left = times(&times(&unit(x), &unit(y)), &unit(z));
                    let right = times(&unit(x), &times(&unit(y), &unit(z)));
                    left == right
                })
            })
        })
    }

    /// Same structure constants and degrees, labels ignored.
    pub fn same_structure(&self, other: &RingTable<T>) -> bool {
        self.degrees == other.degrees && self.products == other.products
    }

    /// Basis pairs whose products differ between the two tables.
    pub fn differences(&self, other: &RingTable<T>) -> Vec<(usize, usize)> {
        let n = self.dim().min(other.dim());
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.products[x][y] != other.products[x][y])
            .collect()
    }
}

/// The exterior algebra on `V, W`, basis `1, V, W, VW` encoded as bitmasks
/// `0b00, 0b01, 0b10, 0b11`. Returns `(sign, mask)` or `None` when the
/// product vanishes.
fn exterior_product(x: u8, y: u8) -> Option<(i64, u8)> {
    if x & y != 0 {
        return None;
    }
    // count transpositions moving each generator of y past the higher ones of x
    let mut swaps = 0;
    for g in 0..2 {
        if y & (1 << g) != 0 {
            swaps += (x >> (g + 1)).count_ones();
        }
    }
    Some((if swaps % 2 == 0 { 1 } else { -1 }, x | y))
}

/// Element of the fibre product: a pair `(p, q)` with
/// `p = p0 + p1 U` in `C[U]/(U^2)` and `q` in the exterior algebra,
/// sharing the constant term.
#[derive(Debug, Clone, PartialEq)]
struct FibrePair<T> {
    left: [T; 2],
    right: [T; 4],
}

impl<T: Field> FibrePair<T> {
    fn basis(k: usize) -> Self {
        let z = || T::zero();
        let o = || T::one();
        match k {
            0 => FibrePair { left: [o(), z()], right: [o(), z(), z(), z()] },
            1 => FibrePair { left: [z(), o()], right: [z(), z(), z(), z()] },
            2 => FibrePair { left: [z(), z()], right: [z(), o(), z(), z()] },
            3 => FibrePair { left: [z(), z()], right: [z(), z(), o(), z()] },
            4 => FibrePair { left: [z(), z()], right: [z(), z(), z(), o()] },
            _ => unreachable!(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let left = [
            self.left[0].clone() * other.left[0].clone(),
            self.left[0].clone() * other.left[1].clone() + self.left[1].clone() * other.left[0].clone(),
        ];
        let mut right: [T; 4] = std::array::from_fn(|_| T::zero());
        for x in 0..4u8 {
            for y in 0..4u8 {
                if let Some((sign, z)) = exterior_product(x, y) {
                    let term = T::from_int(sign) * self.right[x as usize].clone() * other.right[y as usize].clone();
                    right[z as usize] = right[z as usize].clone() + term;
                }
            }
        }
        FibrePair { left, right }
    }

    /// Coordinates in the basis `(1, U, V, W, VW)`.
    fn coordinates(&self) -> Vec<T> {
        assert_eq!(self.left[0], self.right[0], "not in the fibre product");
        vec![
            self.left[0].clone(),
            self.left[1].clone(),
            self.right[1].clone(),
            self.right[2].clone(),
            self.right[3].clone(),
        ]
    }
}

/// Multiplication table of the fibre product in the basis `(1, U, V, W, VW)`
/// with degrees `(0, 0, 1, 1, 2)`.
pub fn fibre_product_table<T: Field>() -> RingTable<T> {
    let products = (0..5)
        .map(|x| (0..5).map(|y| FibrePair::<T>::basis(x).mul(&FibrePair::basis(y)).coordinates()).collect())
        .collect();
    RingTable::new(
        ["1", "U", "V", "W", "VW"].into_iter().map(String::from).collect(),
        vec![0, 0, 1, 1, 2],
        products,
    )
}
