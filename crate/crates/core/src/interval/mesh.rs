//! Finite site on `[0, δ)`: cells, interior breakpoints and the boundary point, with the
//! polynomial form models attached to connected runs of cells.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{GradedSpace, Matrix};
use crate::linf::{FiniteCdga, ProductMode, SparseVec};
use crate::scalar::Scalar;

use super::form::{form_basis_space, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMesh {
    breakpoints: Vec<Scalar>,
}

/// Points of the finite site. `Break(i)` is the interior breakpoint `t_i`, `0 < i < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Point {
    Boundary,
    Cell(usize),
    Break(usize),
}

/// An open set: a set of points closed under generization (a breakpoint needs both adjacent
/// cells, the boundary point needs cell 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OpenSet {
    pub boundary: bool,
    pub cells: BTreeSet<usize>,
    pub breaks: BTreeSet<usize>,
}

/// A connected component of an open set: cells `first..=last` glued through breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub first: usize,
    pub last: usize,
    pub boundary: bool,
    pub start: Scalar,
    pub length: Scalar,
}

impl CellMesh {
    pub fn new(breakpoints: Vec<Scalar>) -> Result<Self> {
        if breakpoints.len() < 2 || !breakpoints[0].is_zero() {
            return Err(Error::InvalidInput("a mesh needs breakpoints 0 = t_0 < … < t_m".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("mesh breakpoints must increase strictly".into()));
        }
        Ok(CellMesh { breakpoints })
    }

    pub fn uniform(cells: usize, delta: &Scalar) -> Result<Self> {
        let m = Scalar::from_integer((cells as i64).into());
        CellMesh::new((0..=cells).map(|i| delta * Scalar::from_integer((i as i64).into()) / &m).collect())
    }

    pub fn num_cells(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn breakpoints(&self) -> &[Scalar] {
        &self.breakpoints
    }

    pub fn delta(&self) -> &Scalar {
        self.breakpoints.last().expect("nonempty")
    }

    pub fn points(&self) -> Vec<Point> {
        let m = self.num_cells();
        let mut p = vec![Point::Boundary];
        p.extend((0..m).map(Point::Cell));
        p.extend((1..m).map(Point::Break));
        p
    }

    /// Every open set, the empty one first.
    pub fn opens(&self) -> Vec<OpenSet> {
        let m = self.num_cells();
        let mut out = Vec::new();
        for mask in 0u32..(1 << m) {
            let cells: BTreeSet<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let allowed: Vec<usize> = (1..m).filter(|i| cells.contains(&(i - 1)) && cells.contains(i)).collect();
            for bmask in 0u32..(1 << allowed.len()) {
                let breaks: BTreeSet<usize> =
                    allowed.iter().enumerate().filter(|(k, _)| bmask & (1 << k) != 0).map(|(_, i)| *i).collect();
                out.push(OpenSet { boundary: false, cells: cells.clone(), breaks: breaks.clone() });
                if cells.contains(&0) {
                    out.push(OpenSet { boundary: true, cells: cells.clone(), breaks });
                }
            }
        }
        out.sort_by_key(|u| (u.size(), u.clone()));
        out
    }

    pub fn nonempty_opens(&self) -> Vec<OpenSet> {
        self.opens().into_iter().filter(|u| !u.is_empty()).collect()
    }

    /// The whole half-open interval `[0, δ)`.
    pub fn full(&self) -> OpenSet {
        let m = self.num_cells();
        OpenSet { boundary: true, cells: (0..m).collect(), breaks: (1..m).collect() }
    }

    /// The open interval `(0, δ)`.
    pub fn interior(&self) -> OpenSet {
        OpenSet { boundary: false, ..self.full() }
    }

    pub fn components(&self, u: &OpenSet) -> Vec<Run> {
        let mut runs = Vec::new();
        let cells: Vec<usize> = u.cells.iter().copied().collect();
        let mut i = 0;
        while i < cells.len() {
            let first = cells[i];
            let mut last = first;
            while i + 1 < cells.len() && cells[i + 1] == last + 1 && u.breaks.contains(&(last + 1)) {
                i += 1;
                last = cells[i];
            }
            let start = self.breakpoints[first].clone();
            let length = &self.breakpoints[last + 1] - &start;
            runs.push(Run { first, last, boundary: first == 0 && u.boundary, start, length });
            i += 1;
        }
        runs
    }

    pub fn is_valid(&self, u: &OpenSet) -> bool {
        let m = self.num_cells();
        u.cells.iter().all(|c| *c < m)
            && u.breaks.iter().all(|b| *b >= 1 && *b < m && u.cells.contains(&(b - 1)) && u.cells.contains(b))
            && (!u.boundary || u.cells.contains(&0))
    }
}

impl OpenSet {
    pub fn empty() -> Self {
        OpenSet::default()
    }

    pub fn from_points(points: &[Point]) -> Self {
        let mut u = OpenSet::default();
        for p in points {
            match p {
                Point::Boundary => u.boundary = true,
                Point::Cell(i) => {
                    u.cells.insert(*i);
                }
                Point::Break(i) => {
                    u.breaks.insert(*i);
                }
            }
        }
        u
    }

    pub fn points(&self) -> Vec<Point> {
        let mut p = Vec::new();
        if self.boundary {
            p.push(Point::Boundary);
        }
        p.extend(self.cells.iter().map(|c| Point::Cell(*c)));
        p.extend(self.breaks.iter().map(|b| Point::Break(*b)));
        p
    }

    pub fn size(&self) -> usize {
        self.cells.len() + self.breaks.len() + usize::from(self.boundary)
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn contains_point(&self, p: Point) -> bool {
        match p {
            Point::Boundary => self.boundary,
            Point::Cell(i) => self.cells.contains(&i),
            Point::Break(i) => self.breaks.contains(&i),
        }
    }

    pub fn is_subset(&self, other: &OpenSet) -> bool {
        (!self.boundary || other.boundary) && self.cells.is_subset(&other.cells) && self.breaks.is_subset(&other.breaks)
    }

    pub fn is_disjoint(&self, other: &OpenSet) -> bool {
        !(self.boundary && other.boundary) && self.cells.is_disjoint(&other.cells) && self.breaks.is_disjoint(&other.breaks)
    }

    pub fn intersection(&self, other: &OpenSet) -> OpenSet {
        OpenSet {
            boundary: self.boundary && other.boundary,
            cells: self.cells.intersection(&other.cells).copied().collect(),
            breaks: self.breaks.intersection(&other.breaks).copied().collect(),
        }
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet {
            boundary: self.boundary || other.boundary,
            cells: self.cells.union(&other.cells).copied().collect(),
            breaks: self.breaks.union(&other.breaks).copied().collect(),
        }
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .points()
            .into_iter()
            .map(|p| match p {
                Point::Boundary => "b".to_string(),
                Point::Cell(i) => format!("c{i}"),
                Point::Break(i) => format!("p{i}"),
            })
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl Run {
    pub fn contains(&self, other: &Run) -> bool {
        self.first <= other.first && other.last <= self.last && (self.boundary || !other.boundary)
    }
}

/// Forms of cap `N` on `[0, length]`, with products capped or truncated.
///
/// Basis: `t^0..t^N` then `t^0 dt..t^{N−1} dt`. In quotient mode the algebra is `Ω` modulo the dg
/// ideal generated by `t^{N+1}` and `t^N dt`.
pub fn run_cdga(length: &Scalar, cap: usize, mode: ProductMode) -> FiniteCdga {
    run_cdga_on(&Scalar::zero(), length, cap, mode)
}

/// Forms of cap `N` in the global coordinate `t`, integrated over `[start, end]`. The quotient
/// ideal is taken at `t = 0` on every run, so restriction between runs is the identity.
pub fn run_cdga_on(start: &Scalar, end: &Scalar, cap: usize, mode: ProductMode) -> FiniteCdga {
    let space: GradedSpace = form_basis_space(cap);
    let n = space.dim();
    let one_form = |i: usize| cap + 1 + i;
    let d = super::form::de_rham_matrix(cap);
    let mut products = vec![vec![None; n]; n];
    let quotient = matches!(mode, ProductMode::Quotient);
    for a in 0..n {
        for b in 0..n {
            let (da, db) = (usize::from(a > cap), usize::from(b > cap));
            let (ia, ib) = (if da == 1 { a - cap - 1 } else { a }, if db == 1 { b - cap - 1 } else { b });
            let e = ia + ib;
            let entry = match da + db {
                2 => Some(SparseVec::new()),
                0 => {
                    if e <= cap {
                        Some(SparseVec::from([(e, Scalar::one())]))
                    } else if quotient {
                        Some(SparseVec::new())
                    } else {
                        None
                    }
                }
                _ => {
                    if e < cap {
                        Some(SparseVec::from([(one_form(e), Scalar::one())]))
                    } else if quotient {
                        Some(SparseVec::new())
                    } else {
                        None
                    }
                }
            };
            products[a][b] = entry;
        }
    }
    let mut integral = Matrix::zeros(n, n);
    let mut pw = vec![Scalar::zero()];
    let (mut a, mut b) = (Scalar::one(), Scalar::one());
    for _ in 0..(2 * cap + 1) {
        a *= start;
        b *= end;
        pw.push(&b - &a);
    }
    for a in 0..n {
        for b in 0..n {
            let (da, db) = (usize::from(a > cap), usize::from(b > cap));
            if da + db != 1 {
                continue;
            }
            let (ia, ib) = (if da == 1 { a - cap - 1 } else { a }, if db == 1 { b - cap - 1 } else { b });
            let e = ia + ib;
            integral.set(a, b, &pw[e + 1] / Scalar::from_integer(((e + 1) as i64).into()));
        }
    }
    let mut eval0 = vec![Scalar::zero(); n];
    eval0[0] = Scalar::one();
    FiniteCdga::new(space, d, products, 0, mode, 1, Some(integral), Some(eval0))
}

/// Indices of the cap-`n` sub-basis inside the cap-`big` form basis.
pub fn sub_basis_indices(n: usize, big: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..=n).collect();
    v.extend((0..n).map(|i| big + 1 + i));
    v
}

/// Restriction of cap-`N` forms from a run starting at `from_start` to one starting at `to_start`.
pub fn restriction_matrix(cap: usize, from_start: &Scalar, to_start: &Scalar) -> Matrix {
    let c = to_start - from_start;
    let n = 2 * cap + 1;
    let mut m = Matrix::zeros(n, n);
    for i in 0..=cap {
        let p = Poly::monomial(i, Scalar::one()).shift(&c);
        for (k, v) in p.0.iter().enumerate() {
            m.set(k, i, v.clone());
            if i < cap && k < cap {
                m.set(cap + 1 + k, cap + 1 + i, v.clone());
            }
        }
    }
    m
}

/// Linear functionals (as rows over the global form basis) cutting out compactly supported forms
/// on a run: the function part vanishes at the far end, and also at the near end for interior runs.
pub fn compact_support_constraints(run: &Run, cap: usize) -> Vec<Vec<Scalar>> {
    let n = 2 * cap + 1;
    let eval_at = |x: &Scalar| {
        let mut row = vec![Scalar::zero(); n];
        let mut pw = Scalar::one();
        for f in row.iter_mut().take(cap + 1) {
            *f = pw.clone();
            pw *= x;
        }
        row
    };
    let mut rows = vec![eval_at(&(&run.start + &run.length))];
    if !run.boundary {
        rows.push(eval_at(&run.start));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn three_cell_mesh_has_twenty_nonempty_opens() {
        let m = CellMesh::uniform(3, &q(1)).unwrap();
        let opens = m.nonempty_opens();
        assert_eq!(opens.len(), 20);
        assert!(opens.iter().all(|u| m.is_valid(u)));
    }

    #[test]
    fn components_follow_breakpoints() {
        let m = CellMesh::uniform(3, &q(3)).unwrap();
        let u = OpenSet::from_points(&[Point::Boundary, Point::Cell(0), Point::Cell(1), Point::Break(1), Point::Cell(2)]);
        let runs = m.components(&u);
        assert_eq!(runs.len(), 2);
        assert!(runs[0].boundary);
        assert_eq!(runs[0].length, q(2));
        assert_eq!(runs[1].start, q(2));
    }

    #[test]
    fn run_cdgas_satisfy_axioms() {
        for mode in [ProductMode::Quotient, ProductMode::Capped { cap: 3 }] {
            let a = run_cdga(&q(2), 3, mode);
            assert_eq!(a.check_axioms(), None, "{mode:?}");
        }
    }

    #[test]
    fn restriction_is_a_chain_map() {
        let r = restriction_matrix(2, &q(0), &q(1));
        let d = crate::interval::form::de_rham_matrix(2);
        assert_eq!(d.mul(&r).unwrap(), r.mul(&d).unwrap());
    }
}
