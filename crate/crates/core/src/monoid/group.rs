//! Ambient groups Z^r ⊕ ⊕ Z/m_i, their elements, homomorphisms, and
//! finitely generated subgroups.
//!
//! A subgroup presentation fixes, once and for all, a deterministic basis of
//! the subgroup together with its abstract invariants (free rank and torsion
//! chain) and a way to express arbitrary elements in abstract coordinates.
//! Everything reduces to Smith normal form on the lifted coordinate lattice:
//! a subgroup H of A = Z^n/R (R the torsion relations) is L̃/R for the lifted
//! lattice L̃ = ⟨generators⟩ + R, and its structure is the quotient of Z^rank(L̃)
//! by the relations re-expressed in a basis of L̃.

use super::MonoidError;
use crate::intlin::{
    column_lattice_basis, quotient_by_lattice, solve, IntMatrix, Quotient,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion_orders: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion_orders: Vec<BigInt>) -> Result<Self, MonoidError> {
        for m in &torsion_orders {
            if *m < BigInt::from(2) {
                return Err(MonoidError::InvalidTorsionOrder(m.clone()));
            }
        }
        Ok(FgAbelianGroup {
            free_rank,
            torsion_orders,
        })
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion_orders: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    /// Total coordinate count: free coordinates followed by torsion ones.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion_orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.dim()],
        }
    }

    fn reduce_in_place(&self, coords: &mut [BigInt]) {
        for (k, m) in self.torsion_orders.iter().enumerate() {
            let i = self.free_rank + k;
            coords[i] = coords[i].mod_floor(m);
        }
    }

    /// Wraps raw coordinates, reducing torsion entries into [0, m).
    pub fn element(&self, mut coords: Vec<BigInt>) -> Result<GroupElement, MonoidError> {
        if coords.len() != self.dim() {
            return Err(MonoidError::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        self.reduce_in_place(&mut coords);
        Ok(GroupElement { coords })
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<GroupElement, MonoidError> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut coords: Vec<BigInt> = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x + y)
            .collect();
        self.reduce_in_place(&mut coords);
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let mut coords: Vec<BigInt> = a.coords.iter().map(|x| -x).collect();
        self.reduce_in_place(&mut coords);
        GroupElement { coords }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, n: &BigInt, a: &GroupElement) -> GroupElement {
        let mut coords: Vec<BigInt> = a.coords.iter().map(|x| x * n).collect();
        self.reduce_in_place(&mut coords);
        GroupElement { coords }
    }

    pub fn free_part<'a>(&self, a: &'a GroupElement) -> &'a [BigInt] {
        &a.coords[..self.free_rank]
    }

    pub fn torsion_part<'a>(&self, a: &'a GroupElement) -> &'a [BigInt] {
        &a.coords[self.free_rank..]
    }

    /// Relations of the presentation Z^dim → A: one column m_i·e_{r+i} per
    /// torsion coordinate.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.dim();
        let s = self.torsion_orders.len();
        let mut rel = IntMatrix::zeros(n, s);
        for (k, m) in self.torsion_orders.iter().enumerate() {
            rel[(self.free_rank + k, k)] = m.clone();
        }
        rel
    }

    /// Graded-lexicographic comparison: by the sum of free coordinates, then
    /// lexicographically over all coordinates. Canonical generator lists are
    /// sorted by this order.
    pub fn canonical_cmp(&self, a: &GroupElement, b: &GroupElement) -> Ordering {
        let ga: BigInt = self.free_part(a).iter().sum();
        let gb: BigInt = self.free_part(b).iter().sum();
        ga.cmp(&gb).then_with(|| a.coords.cmp(&b.coords))
    }

    /// Every element of the full torsion subgroup ⊕ Z/m_i of the ambient
    /// group, with zero free part.
    pub fn ambient_torsion_elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for (k, m) in self.torsion_orders.iter().enumerate() {
            let i = self.free_rank + k;
            let mut next = Vec::new();
            for base in &out {
                let mut c = BigInt::zero();
                while &c < m {
                    let mut coords = base.coords.clone();
                    coords[i] = c.clone();
                    next.push(GroupElement { coords });
                    c += 1;
                }
            }
            out = next;
        }
        out
    }
}

/// An element of some [`FgAbelianGroup`], stored with reduced torsion
/// coordinates. The derived order is plain lexicographic and is only used
/// for set containers; canonical sorting goes through
/// [`FgAbelianGroup::canonical_cmp`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Homomorphism between ambient groups, given by an integer matrix acting on
/// full coordinate lifts. Construction checks that torsion orders are
/// respected, so `apply` is well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(
        source: FgAbelianGroup,
        target: FgAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self, MonoidError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(MonoidError::HomShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.dim(),
                expected_cols: source.dim(),
            });
        }
        for (k, m) in source.torsion_orders.iter().enumerate() {
            let j = source.free_rank + k;
            for i in 0..target.dim() {
                let entry = m * &matrix[(i, j)];
                let ok = if i < target.free_rank {
                    entry.is_zero()
                } else {
                    entry.is_multiple_of(&target.torsion_orders[i - target.free_rank])
                };
                if !ok {
                    return Err(MonoidError::TorsionIncompatible { col: j });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: FgAbelianGroup) -> Self {
        let matrix = IntMatrix::identity(group.dim());
        GroupHom {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, el: &GroupElement) -> Result<GroupElement, MonoidError> {
        if el.coords.len() != self.source.dim() {
            return Err(MonoidError::DimensionMismatch {
                expected: self.source.dim(),
                found: el.coords.len(),
            });
        }
        self.target.element(self.matrix.mul_vec(&el.coords))
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom, MonoidError> {
        if inner.target != self.source {
            return Err(MonoidError::AmbientMismatch);
        }
        GroupHom::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix),
        )
    }
}

/// A finitely generated subgroup H ≤ A with a deterministic basis and its
/// abstract invariants.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    ambient: FgAbelianGroup,
    /// Columns: a basis of the lifted lattice L̃ = ⟨generators⟩ + R ⊆ Z^dim.
    lifted_basis: IntMatrix,
    /// Quotient data of Z^rank(L̃) by the relations expressed in that basis.
    quotient: Quotient,
    /// The abstract group H ≅ Z^q ⊕ ⊕ Z/d_i.
    abstract_group: FgAbelianGroup,
    /// Ambient elements realizing the abstract basis, free generators first.
    generators: Vec<GroupElement>,
}

impl SubgroupPresentation {
    pub fn new(
        ambient: &FgAbelianGroup,
        gens: &[GroupElement],
    ) -> Result<SubgroupPresentation, MonoidError> {
        let n = ambient.dim();
        for g in gens {
            if g.coords.len() != n {
                return Err(MonoidError::DimensionMismatch {
                    expected: n,
                    found: g.coords.len(),
                });
            }
        }
        let rel = ambient.relation_matrix();
        let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords.clone()).collect();
        let lifted = IntMatrix::from_columns(n, &cols).hstack(&rel);
        let lifted_basis = column_lattice_basis(&lifted);
        let m = lifted_basis.cols();

        let mut rel_in_basis = IntMatrix::zeros(m, rel.cols());
        for j in 0..rel.cols() {
            let x = solve(&lifted_basis, &rel.column(j))
                .expect("torsion relations lie in the lifted lattice");
            for i in 0..m {
                rel_in_basis[(i, j)] = x[i].clone();
            }
        }
        let quotient = quotient_by_lattice(m, &rel_in_basis);
        let abstract_group =
            FgAbelianGroup::new(quotient.free_rank, quotient.torsion.clone())?;

        let mut generators = Vec::with_capacity(abstract_group.dim());
        for j in 0..abstract_group.dim() {
            let lift = lifted_basis.mul_vec(&quotient.section.column(j));
            generators.push(ambient.element(lift)?);
        }
        Ok(SubgroupPresentation {
            ambient: ambient.clone(),
            lifted_basis,
            quotient,
            abstract_group,
            generators,
        })
    }

    pub fn ambient(&self) -> &FgAbelianGroup {
        &self.ambient
    }

    /// The subgroup as an abstract group: free rank, then torsion chain.
    pub fn abstract_group(&self) -> &FgAbelianGroup {
        &self.abstract_group
    }

    pub fn free_rank(&self) -> usize {
        self.abstract_group.free_rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.abstract_group.torsion_orders
    }

    /// Canonical generators realizing the abstract basis: `free_rank()` free
    /// generators followed by one generator per torsion factor.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Generators as matrix columns.
    pub fn basis_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.coords.clone()).collect();
        IntMatrix::from_columns(self.ambient.dim(), &cols)
    }

    /// Abstract coordinates of `el`, or None when `el` is outside the
    /// subgroup. Free coordinates are exact integers, torsion coordinates are
    /// reduced.
    pub fn express(&self, el: &GroupElement) -> Option<Vec<BigInt>> {
        if el.coords.len() != self.ambient.dim() {
            return None;
        }
        let x = solve(&self.lifted_basis, &el.coords)?;
        Some(self.quotient.project(&x))
    }

    pub fn contains(&self, el: &GroupElement) -> bool {
        self.express(el).is_some()
    }

    /// Rebuilds an ambient element from abstract coordinates.
    pub fn from_abstract(&self, coords: &[BigInt]) -> Result<GroupElement, MonoidError> {
        if coords.len() != self.abstract_group.dim() {
            return Err(MonoidError::DimensionMismatch {
                expected: self.abstract_group.dim(),
                found: coords.len(),
            });
        }
        let mut acc = self.ambient.zero();
        for (g, c) in self.generators.iter().zip(coords) {
            acc = self.ambient.add(&acc, &self.ambient.scale(c, g));
        }
        Ok(acc)
    }

    /// All elements of the torsion subgroup of H, canonically sorted. The
    /// torsion subgroup is finite: it is generated by the torsion generators
    /// of the abstract basis.
    pub fn torsion_elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.ambient.zero()];
        for (k, order) in self.abstract_group.torsion_orders.iter().enumerate() {
            let t = &self.generators[self.abstract_group.free_rank + k];
            let mut next = Vec::new();
            for base in &out {
                let mut c = BigInt::zero();
                let mut acc = base.clone();
                while &c < order {
                    next.push(acc.clone());
                    acc = self.ambient.add(&acc, t);
                    c += 1;
                }
            }
            out = next;
        }
        out.sort_by(|a, b| self.ambient.canonical_cmp(a, b));
        out.dedup();
        out
    }
}
