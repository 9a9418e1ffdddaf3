//! The ω-Jacobi ideal on symbolic structure constants, and the verification
//! suites built on it.

mod checks;

use std::cmp::Ordering;

use thiserror::Error;

use crate::fields::{Field, FieldElement};
use crate::groebner::{GroebnerError, Ideal, PolyRing, Polynomial};
use crate::linalg::SkewForm;
use crate::omega::{OmegaError, StructureConstants};

pub use checks::{
    fixed_d_components, verify_fixed_d_components, verify_fixed_d_components_with, verify_three_dim_ideal,
    verify_three_dim_ideal_with, DELTA, DET_M, F1, F2, F3, G, H, H1, H2,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("dimension {0} is not supported (3, or 4 with a fixed D-subalgebra)")]
    UnsupportedDimension(usize),
    #[error("omega must be the canonical form J_m of size {0}")]
    NotCanonical(usize),
    #[error("point has {got} coordinates, ring has {expected}")]
    PointLength { got: usize, expected: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

/// Where a generator first appeared: coordinate `coordinate` of the residual
/// on the ordered basis triple `triple`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub triple: (usize, usize, usize),
    pub coordinate: usize,
}

/// Variable `v` of the ring stands for the coefficient of `e_k` in
/// `[e_i, e_j]`, `i < j`, recorded as `coordinates[v] = (i, j, k)`.
/// Brackets not covered by a variable are taken from `fixed`.
#[derive(Debug, Clone)]
pub struct VarietyIdeal {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    provenance: Vec<Provenance>,
    coordinates: Vec<(usize, usize, usize)>,
    fixed: StructureConstants,
}

impl VarietyIdeal {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn coordinates(&self) -> &[(usize, usize, usize)] {
        &self.coordinates
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.generators.clone()).expect("generators live in the ring")
    }

    /// The point of the variety described by a bracket table.
    pub fn point_of(&self, sc: &StructureConstants) -> Vec<FieldElement> {
        self.coordinates
            .iter()
            .map(|&(i, j, k)| sc.coefficient(i, j, k))
            .collect()
    }

    /// The bracket table at a point.
    pub fn structure_at(&self, point: &[FieldElement]) -> Result<StructureConstants, VarietyError> {
        if point.len() != self.coordinates.len() {
            return Err(VarietyError::PointLength {
                got: point.len(),
                expected: self.coordinates.len(),
            });
        }
        let mut sc = self.fixed.clone();
        let mut rows: Vec<((usize, usize), Vec<FieldElement>)> = Vec::new();
        for (&(i, j, k), value) in self.coordinates.iter().zip(point) {
            let pos = match rows.iter().position(|(p, _)| *p == (i, j)) {
                Some(pos) => pos,
                None => {
                    rows.push(((i, j), sc.bracket(i, j)));
                    rows.len() - 1
                }
            };
            rows[pos].1[k] = value.clone();
        }
        for ((i, j), v) in rows {
            sc.set_bracket(i, j, v)?;
        }
        Ok(sc)
    }

    /// Every generator evaluated at `point`.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>, VarietyError> {
        self.generators
            .iter()
            .map(|g| self.ring.evaluate(g, point).map_err(VarietyError::from))
            .collect()
    }
}

/// Symbolic bracket table: `table[i][j]` is the coordinate vector of
/// `[e_i, e_j]` over the ring, skew by construction.
struct SymbolicBrackets {
    n: usize,
    table: Vec<Vec<Vec<Polynomial>>>,
}

impl SymbolicBrackets {
    fn new(ring: &PolyRing, fixed: &StructureConstants, coordinates: &[(usize, usize, usize)]) -> Self {
        let n = fixed.dim();
        let constant = |c: FieldElement| ring.constant(c);
        let mut table = vec![vec![vec![ring.zero(); n]; n]; n];
        for (i, j) in fixed.pairs() {
            let v: Vec<Polynomial> = fixed.bracket(i, j).into_iter().map(constant).collect();
            table[i][j] = v;
        }
        for (var, &(i, j, k)) in coordinates.iter().enumerate() {
            table[i][j][k] = ring.var(&ring.vars()[var]).expect("own variable");
        }
        for i in 0..n {
            for j in 0..i {
                table[i][j] = table[j][i].iter().map(Polynomial::neg).collect();
            }
        }
        SymbolicBrackets { n, table }
    }

    /// `Σ_cyc [[e_a, e_b], e_c] − ω(e_a, e_b) e_c` over the cyclic shifts of `(i, j, k)`.
    fn residual(&self, ring: &PolyRing, omega: &SkewForm, i: usize, j: usize, k: usize) -> Vec<Polynomial> {
        let one = ring.field().one();
        let mut out = vec![ring.zero(); self.n];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = &self.table[a][b];
            for (m, coeff) in inner.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (l, target) in self.table[m][c].iter().enumerate() {
                    if !target.is_zero() {
                        out[l] = out[l].add_scaled(&coeff.mul(target), &one);
                    }
                }
            }
            let w = omega.matrix().get(a, b);
            if !w.is_zero() {
                out[c] = out[c].add_scaled(&ring.constant(w.clone()), &-&one);
            }
        }
        out
    }
}

/// Ascending by leading monomial; ties broken by the remaining terms.
fn generator_order(a: &Polynomial, b: &Polynomial) -> Ordering {
    let monomials = |p: &Polynomial| p.terms().iter().map(|(m, _)| m.clone()).collect::<Vec<_>>();
    monomials(a).cmp(&monomials(b)).then_with(|| {
        let coeffs = |p: &Polynomial| p.terms().iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>();
        coeffs(a).cmp(&coeffs(b))
    })
}

/// Expands the residual on every ordered triple of distinct indices,
/// makes each coordinate monic, drops zeros and repeats, and sorts.
fn jacobi_ideal(
    ring: PolyRing,
    fixed: StructureConstants,
    coordinates: Vec<(usize, usize, usize)>,
    omega: &SkewForm,
    triples: impl IntoIterator<Item = (usize, usize, usize)>,
) -> VarietyIdeal {
    let sym = SymbolicBrackets::new(&ring, &fixed, &coordinates);
    let mut found: Vec<(Polynomial, Provenance)> = Vec::new();
    for (i, j, k) in triples {
        for (coordinate, p) in sym.residual(&ring, omega, i, j, k).into_iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let p = p.monic();
            if !found.iter().any(|(q, _)| *q == p) {
                found.push((
                    p,
                    Provenance {
                        triple: (i, j, k),
                        coordinate,
                    },
                ));
            }
        }
    }
    found.sort_by(|a, b| generator_order(&a.0, &b.0));
    let (generators, provenance) = found.into_iter().unzip();
    VarietyIdeal {
        ring,
        generators,
        provenance,
        coordinates,
        fixed,
    }
}

fn ordered_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n)
        .flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .filter(|&(i, j, k)| i != j && j != k && i != k)
}

/// The ring of the 3-dimensional variety: `x_k`, `y_k`, `z_k` are the
/// coefficients of `e_k` in `[e_1,e_2]`, `[e_1,e_3]`, `[e_2,e_3]`.
fn three_dim_coordinates() -> (Vec<String>, Vec<(usize, usize, usize)>) {
    let mut names = Vec::new();
    let mut coords = Vec::new();
    for (letter, (i, j)) in [("x", (0, 1)), ("y", (0, 2)), ("z", (1, 2))] {
        for k in 0..3 {
            names.push(format!("{letter}{}", k + 1));
            coords.push((i, j, k));
        }
    }
    (names, coords)
}

/// Basis `x, y, z, e`: the brackets `[x,y] = y`, `[x,z] = 0`, `[y,z] = z` are
/// fixed and `x_k`, `y_k`, `z_k` are the coefficients of the k-th basis
/// vector in `[x,e]`, `[y,e]`, `[z,e]`.
fn fixed_d_coordinates(field: &Field) -> (Vec<String>, Vec<(usize, usize, usize)>, StructureConstants) {
    let fixed = StructureConstants::zero(field, 4)
        .with_bracket(0, 1, &[0, 1, 0, 0])
        .with_bracket(1, 2, &[0, 0, 1, 0]);
    let mut names = Vec::new();
    let mut coords = Vec::new();
    for (letter, i) in [("x", 0), ("y", 1), ("z", 2)] {
        for k in 0..4 {
            names.push(format!("{letter}{}", k + 1));
            coords.push((i, 3, k));
        }
    }
    (names, coords, fixed)
}

/// The ω-Jacobi ideal for a canonical ω.
///
/// `n = 3` leaves all nine structure constants free. `n = 4` fixes the
/// subalgebra on the first three basis vectors to `[x,y] = y`, `[x,z] = 0`,
/// `[y,z] = z` and leaves the twelve brackets with the last vector free.
pub fn defining_ideal(n: usize, omega: &SkewForm) -> Result<VarietyIdeal, VarietyError> {
    if !(3..=4).contains(&n) {
        return Err(VarietyError::UnsupportedDimension(n));
    }
    let field = omega.field().clone();
    let canonical = omega.dim() == n && (0..=n).step_by(2).any(|m| *omega == SkewForm::canonical(&field, n, m));
    if !canonical {
        return Err(VarietyError::NotCanonical(n));
    }
    if n == 3 {
        let (names, coords) = three_dim_coordinates();
        let ring = PolyRing::new(&field, names)?;
        Ok(jacobi_ideal(
            ring,
            StructureConstants::zero(&field, 3),
            coords,
            omega,
            ordered_triples(3),
        ))
    } else {
        fixed_d_ideal(omega)
    }
}

/// The ideal of the 4-dimensional configuration with fixed D-subalgebra,
/// for any skew ω of size 4.
pub fn fixed_d_ideal(omega: &SkewForm) -> Result<VarietyIdeal, VarietyError> {
    if omega.dim() != 4 {
        return Err(VarietyError::UnsupportedDimension(omega.dim()));
    }
    let (names, coords, fixed) = fixed_d_coordinates(omega.field());
    let ring = PolyRing::new(omega.field(), names)?;
    Ok(jacobi_ideal(ring, fixed, coords, omega, ordered_triples(4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_dim_generators_are_the_known_three() {
        let k = Field::rationals();
        let v = defining_ideal(3, &SkewForm::canonical(&k, 3, 2)).unwrap();
        let text: Vec<String> = v.generators().iter().map(|g| v.ring().format(g)).collect();
        assert_eq!(text, [F1, F2, F3]);
        assert_eq!(v.provenance().len(), 3);
    }

    #[test]
    fn structure_round_trip() {
        let k = Field::prime(101).unwrap();
        let v = defining_ideal(3, &SkewForm::canonical(&k, 3, 2)).unwrap();
        let point: Vec<FieldElement> = (1..=9).map(|i| k.from_i64(i * 7)).collect();
        let sc = v.structure_at(&point).unwrap();
        assert_eq!(v.point_of(&sc), point);
        assert!(v.structure_at(&point[..3]).is_err());
    }

    #[test]
    fn triple_order_is_irrelevant() {
        let k = Field::prime(101).unwrap();
        let w = SkewForm::canonical(&k, 3, 2);
        let (names, coords) = three_dim_coordinates();
        let ring = PolyRing::new(&k, names).unwrap();
        let fixed = StructureConstants::zero(&k, 3);
        let forward = jacobi_ideal(ring.clone(), fixed.clone(), coords.clone(), &w, ordered_triples(3));
        let mut reversed: Vec<_> = ordered_triples(3).collect();
        reversed.reverse();
        let backward = jacobi_ideal(ring, fixed, coords, &w, reversed);
        assert_eq!(forward.generators(), backward.generators());
    }

    #[test]
    fn refused_dimensions() {
        let k = Field::rationals();
        assert_eq!(
            defining_ideal(5, &SkewForm::canonical(&k, 5, 2)).unwrap_err(),
            VarietyError::UnsupportedDimension(5)
        );
        assert_eq!(
            defining_ideal(3, &SkewForm::canonical(&k, 4, 2)).unwrap_err(),
            VarietyError::NotCanonical(3)
        );
    }
}
