//! Cyclic L∞ algebras on finite graded spaces, stored by structure constants.
//!
//! The underlying space `F` carries the field grading. The brackets are the L∞ operations on
//! `L = F[−1]` (so `|x|_L = |x|_F + 1`): `ℓ_k` is graded antisymmetric in the `L`-degrees and has
//! `L`-degree `2 − k`, which means it raises the total `F`-degree by one.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{BasisElement, CochainComplex, CoordinateSolver, GradedMap, GradedSpace, Matrix};
use crate::scalar::{format_rational, parse_rational, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn sv_add(acc: &mut SparseVec, i: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(i).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&i);
    }
}

pub fn sv_axpy(acc: &mut SparseVec, c: &Scalar, v: &SparseVec) {
    for (i, x) in v {
        sv_add(acc, *i, &(c * x));
    }
}

pub fn sv_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sv_to_dense(v: &SparseVec, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Sign of the permutation sorting `tuple`, with antisymmetric Koszul rule in the given degrees.
/// Returns `None` when antisymmetry forces the value to vanish (a repeated even element).
pub fn antisym_sort(tuple: &[usize], ldeg: &[i32]) -> Option<(bool, Vec<usize>)> {
    let mut t = tuple.to_vec();
    let mut negative = false;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            // swapping x, y contributes −(−1)^{|x||y|}
            let odd = (ldeg[t[j - 1]] * ldeg[t[j]]).rem_euclid(2) == 1;
            if !odd {
                negative = !negative;
            }
            t.swap(j - 1, j);
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1] && ldeg[w[0]].rem_euclid(2) == 0) {
        return None;
    }
    Some((negative, t))
}

fn nondecreasing_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i, cur, out);
            cur.pop();
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

/// Brackets of one arity, keyed by sorted input tuples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BracketTable {
    pub entries: HashMap<Vec<usize>, SparseVec>,
}

/// Degree-`p` bilinear form on `F`, stored as a full matrix; nonzero only where `|x| + |y| + p = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub degree: i32,
    pub matrix: Matrix,
}

impl Pairing {
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let my = self.matrix.mul_vec(y);
        x.iter().zip(&my).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn eval_sparse(&self, x: &SparseVec, y: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, a) in x {
            for (j, b) in self.matrix.row(*i) {
                if let Some(c) = y.get(j) {
                    acc += a * b * c;
                }
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicLInfinity {
    space: GradedSpace,
    differential: Matrix,
    brackets: BTreeMap<usize, BracketTable>,
    pairing: Option<Pairing>,
    symplectic: bool,
}

impl CyclicLInfinity {
    pub fn new(space: GradedSpace) -> Self {
        let n = space.dim();
        CyclicLInfinity { space, differential: Matrix::zeros(n, n), brackets: BTreeMap::new(), pairing: None, symplectic: false }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn fdeg(&self, i: usize) -> i32 {
        self.space.degree(i)
    }

    pub fn ldeg(&self, i: usize) -> i32 {
        self.space.degree(i) + 1
    }

    pub fn ldegrees(&self) -> Vec<i32> {
        self.space.degrees().iter().map(|d| d + 1).collect()
    }

    pub fn differential(&self) -> &Matrix {
        &self.differential
    }

    pub fn set_differential(&mut self, d: Matrix) -> Result<()> {
        GradedMap::new(self.space.clone(), self.space.clone(), 1, d.clone())?;
        self.differential = d;
        Ok(())
    }

    pub fn complex(&self) -> Result<CochainComplex> {
        CochainComplex::from_matrix(self.space.clone(), self.differential.clone())
    }

    pub fn pairing(&self) -> Option<&Pairing> {
        self.pairing.as_ref()
    }

    pub fn is_symplectic(&self) -> bool {
        self.symplectic
    }

    pub fn brackets(&self) -> &BTreeMap<usize, BracketTable> {
        &self.brackets
    }

    /// Largest arity with a nonzero operation (1 for a bare complex, 0 if everything vanishes).
    pub fn max_arity(&self) -> usize {
        let top = self.brackets.iter().filter(|(_, t)| !t.entries.is_empty()).map(|(k, _)| *k).max();
        match top {
            Some(k) => k,
            None if !self.differential.is_zero() => 1,
            None => 0,
        }
    }

    /// Records `ℓ_k(x_{inputs}) = value`; other orderings follow by antisymmetry.
    pub fn set_bracket(&mut self, inputs: &[usize], value: SparseVec) -> Result<()> {
        let k = inputs.len();
        if k < 2 {
            return Err(Error::InvalidInput("use set_differential for arity 1".into()));
        }
        if let Some(bad) = inputs.iter().chain(value.keys()).find(|i| **i >= self.dim()) {
            return Err(Error::InvalidInput(format!("basis index {bad} out of range")));
        }
        let target = inputs.iter().map(|i| self.fdeg(*i)).sum::<i32>() + 1;
        if let Some((o, _)) = value.iter().find(|(o, _)| self.fdeg(**o) != target) {
            return Err(Error::InvalidInput(format!(
                "bracket on {inputs:?} must land in degree {target}, entry {o} has degree {}",
                self.fdeg(*o)
            )));
        }
        let ld = self.ldegrees();
        let value: SparseVec = value.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        match antisym_sort(inputs, &ld) {
            None => {
                if value.is_empty() {
                    Ok(())
                } else {
                    Err(Error::Inconsistent(format!("bracket on {inputs:?} must vanish by graded antisymmetry")))
                }
            }
            Some((neg, sorted)) => {
                let canon: SparseVec = if neg { value.iter().map(|(i, c)| (*i, -c.clone())).collect() } else { value };
                let table = self.brackets.entry(k).or_default();
                match table.entries.get(&sorted) {
                    Some(existing) if *existing != canon => Err(Error::Inconsistent(format!(
                        "bracket on {inputs:?} conflicts with an antisymmetric permutation given earlier"
                    ))),
                    _ => {
                        if canon.is_empty() {
                            table.entries.remove(&sorted);
                        } else {
                            table.entries.insert(sorted, canon);
                        }
                        Ok(())
                    }
                }
            }
        }
    }

    /// Like `set_bracket`, but accumulates into an existing value.
    pub fn add_bracket(&mut self, inputs: &[usize], value: &SparseVec) -> Result<()> {
        let ld = self.ldegrees();
        let Some((neg, sorted)) = antisym_sort(inputs, &ld) else {
            return if value.values().all(Zero::is_zero) {
                Ok(())
            } else {
                Err(Error::Inconsistent(format!("bracket on {inputs:?} must vanish by graded antisymmetry")))
            };
        };
        let mut cur = self.brackets.get(&inputs.len()).and_then(|t| t.entries.get(&sorted)).cloned().unwrap_or_default();
        let s = if neg { -Scalar::one() } else { Scalar::one() };
        sv_axpy(&mut cur, &s, value);
        self.brackets.entry(inputs.len()).or_default().entries.remove(&sorted);
        self.set_bracket(&sorted, cur)
    }

    /// `ℓ_k` on basis vectors (k ≥ 1).
    pub fn bracket_basis(&self, inputs: &[usize]) -> SparseVec {
        if inputs.len() == 1 {
            let col = inputs[0];
            let mut out = SparseVec::new();
            for r in 0..self.dim() {
                let v = self.differential.get(r, col);
                if !v.is_zero() {
                    out.insert(r, v);
                }
            }
            return out;
        }
        let Some(table) = self.brackets.get(&inputs.len()) else { return SparseVec::new() };
        let ld = self.ldegrees();
        match antisym_sort(inputs, &ld) {
            None => SparseVec::new(),
            Some((neg, sorted)) => match table.entries.get(&sorted) {
                None => SparseVec::new(),
                Some(v) if neg => v.iter().map(|(i, c)| (*i, -c.clone())).collect(),
                Some(v) => v.clone(),
            },
        }
    }

    /// `ℓ_k` on arbitrary sparse vectors, by multilinear expansion.
    pub fn bracket(&self, inputs: &[SparseVec]) -> SparseVec {
        let k = inputs.len();
        if k == 0 {
            return SparseVec::new();
        }
        if k == 1 {
            let mut out = SparseVec::new();
            let dt = &self.differential;
            for (c, x) in &inputs[0] {
                for r in 0..self.dim() {
                    let v = dt.get(r, *c);
                    if !v.is_zero() {
                        sv_add(&mut out, r, &(&v * x));
                    }
                }
            }
            return out;
        }
        if self.brackets.get(&k).is_none_or(|t| t.entries.is_empty()) || inputs.iter().any(|v| v.is_empty()) {
            return SparseVec::new();
        }
        let mut out = SparseVec::new();
        let supports: Vec<Vec<(&usize, &Scalar)>> = inputs.iter().map(|v| v.iter().collect()).collect();
        let mut idx = vec![0usize; k];
        loop {
            let tuple: Vec<usize> = (0..k).map(|i| *supports[i][idx[i]].0).collect();
            let val = self.bracket_basis(&tuple);
            if !val.is_empty() {
                let coeff = (0..k).fold(Scalar::one(), |acc, i| acc * supports[i][idx[i]].1);
                sv_axpy(&mut out, &coeff, &val);
            }
            let mut p = 0;
            loop {
                if p == k {
                    return out;
                }
                idx[p] += 1;
                if idx[p] < supports[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }

    /// Installs a pairing given on some ordered pairs, completing it by
    /// `⟨x, y⟩ = −(−1)^{|x||y|} ⟨y, x⟩` in the field grading.
    pub fn set_pairing(&mut self, degree: i32, entries: &[(usize, usize, Scalar)], symplectic: bool) -> Result<()> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        let mut given: HashMap<(usize, usize), Scalar> = HashMap::new();
        for (i, j, c) in entries {
            if *i >= n || *j >= n {
                return Err(Error::InvalidInput(format!("pairing index ({i}, {j}) out of range")));
            }
            if c.is_zero() {
                continue;
            }
            if self.fdeg(*i) + self.fdeg(*j) + degree != 0 {
                return Err(Error::InvalidInput(format!(
                    "pairing entry ({i}, {j}) has degrees {} + {} incompatible with pairing degree {degree}",
                    self.fdeg(*i),
                    self.fdeg(*j)
                )));
            }
            let s = if (self.fdeg(*i) * self.fdeg(*j)).rem_euclid(2) == 1 { Scalar::one() } else { -Scalar::one() };
            let mirrored = &s * c;
            for ((a, b), v) in [((*i, *j), c.clone()), ((*j, *i), mirrored)] {
                match given.get(&(a, b)) {
                    Some(old) if *old != v => {
                        return Err(Error::Inconsistent(format!("pairing entries ({i}, {j}) and ({j}, {i}) conflict")));
                    }
                    _ => {
                        given.insert((a, b), v.clone());
                        m.set(a, b, v);
                    }
                }
            }
        }
        if symplectic && m.rank() != n {
            return Err(Error::InvalidInput("pairing flagged symplectic is degenerate".into()));
        }
        self.pairing = Some(Pairing { degree, matrix: m });
        self.symplectic = symplectic;
        Ok(())
    }

    pub fn set_pairing_matrix(&mut self, degree: i32, matrix: Matrix, symplectic: bool) -> Result<()> {
        let n = self.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for (j, v) in matrix.row(i) {
                entries.push((i, *j, v.clone()));
            }
        }
        self.set_pairing(degree, &entries, symplectic)
    }

    pub fn clear_pairing(&mut self) {
        self.pairing = None;
        self.symplectic = false;
    }

    pub fn pair(&self, x: &SparseVec, y: &SparseVec) -> Scalar {
        self.pairing.as_ref().map_or_else(Scalar::zero, |p| p.eval_sparse(x, y))
    }

    /// Block sum of algebras with a common pairing degree; labels get the given prefixes.
    pub fn direct_sum(parts: &[(String, &CyclicLInfinity)]) -> Result<CyclicLInfinity> {
        let mut basis = Vec::new();
        for (prefix, a) in parts {
            for b in a.space.basis() {
                basis.push(BasisElement { label: format!("{prefix}{}", b.label), degree: b.degree });
            }
        }
        let space = GradedSpace::new(basis)?;
        let n = space.dim();
        let mut out = CyclicLInfinity::new(space);
        let mut d = Matrix::zeros(n, n);
        let mut pm = Matrix::zeros(n, n);
        let mut pdeg: Option<i32> = None;
        let mut off = 0;
        for (_, a) in parts {
            for r in 0..a.dim() {
                for (c, v) in a.differential.row(r) {
                    d.set(off + r, off + c, v.clone());
                }
            }
            for (k, table) in &a.brackets {
                let t = out.brackets.entry(*k).or_default();
                for (xs, v) in &table.entries {
                    let key: Vec<usize> = xs.iter().map(|x| x + off).collect();
                    t.entries.insert(key, v.iter().map(|(i, c)| (i + off, c.clone())).collect());
                }
            }
            if let Some(p) = &a.pairing {
                if pdeg.is_some_and(|q| q != p.degree) {
                    return Err(Error::InvalidInput("summands have different pairing degrees".into()));
                }
                pdeg = Some(p.degree);
                for r in 0..a.dim() {
                    for (c, v) in p.matrix.row(r) {
                        pm.set(off + r, off + c, v.clone());
                    }
                }
            }
            off += a.dim();
        }
        out.differential = d;
        if let Some(degree) = pdeg {
            out.pairing = Some(Pairing { degree, matrix: pm });
        }
        Ok(out)
    }

    /// Structure induced on the span of independent homogeneous vectors, which must be closed
    /// under every operation. The pairing is pulled back and never flagged symplectic.
    pub fn restrict(&self, columns: &[Vec<Scalar>], labels: Vec<String>) -> Result<CyclicLInfinity> {
        let mut basis = Vec::with_capacity(columns.len());
        for (v, label) in columns.iter().zip(labels) {
            let degree = self
                .space
                .homogeneous_degree(v)
                .ok_or_else(|| Error::InvalidInput(format!("spanning vector {label} is zero or not homogeneous")))?;
            basis.push(BasisElement { label, degree });
        }
        let m = columns.len();
        let incl = Matrix::from_columns(self.dim(), columns);
        let solver = CoordinateSolver::new(incl.clone())?;
        let coords = |v: &SparseVec, what: &str| -> Result<SparseVec> {
            solver
                .coordinates(&sv_to_dense(v, self.dim()))
                .map(|x| sv_from_dense(&x))
                .ok_or_else(|| Error::Inconsistent(format!("{what} leaves the subspace")))
        };
        let mut out = CyclicLInfinity::new(GradedSpace::new(basis)?);
        let sparse_cols: Vec<SparseVec> = columns.iter().map(|c| sv_from_dense(c)).collect();
        let mut d = Matrix::zeros(m, m);
        for (c, v) in sparse_cols.iter().enumerate() {
            for (r, x) in coords(&self.bracket(std::slice::from_ref(v)), "the differential")? {
                d.set(r, c, x);
            }
        }
        out.differential = d;
        let ld = out.ldegrees();
        for k in self.brackets.keys().copied().filter(|k| !self.brackets[k].entries.is_empty()) {
            for tuple in nondecreasing_tuples(m, k) {
                if antisym_sort(&tuple, &ld).is_none() {
                    continue;
                }
                let args: Vec<SparseVec> = tuple.iter().map(|i| sparse_cols[*i].clone()).collect();
                let v = coords(&self.bracket(&args), &format!("ℓ_{k}"))?;
                if !v.is_empty() {
                    out.set_bracket(&tuple, v)?;
                }
            }
        }
        if let Some(p) = &self.pairing {
            let pm = incl.transpose().mul(&p.matrix)?.mul(&incl)?;
            out.pairing = Some(Pairing { degree: p.degree, matrix: pm });
        }
        Ok(out)
    }

    pub fn to_json(&self) -> LinfJson {
        let mut brackets = Vec::new();
        if !self.differential.is_zero() {
            let mut entries = Vec::new();
            for r in 0..self.dim() {
                for (c, v) in self.differential.row(r) {
                    entries.push(BracketEntryJson { inputs: vec![*c], output: r, coeff: format_rational(v) });
                }
            }
            entries.sort_by(|a, b| (&a.inputs, a.output).cmp(&(&b.inputs, b.output)));
            brackets.push(BracketJson { arity: 1, entries });
        }
        for (k, t) in &self.brackets {
            let mut entries = Vec::new();
            for (inputs, val) in &t.entries {
                for (o, c) in val {
                    entries.push(BracketEntryJson { inputs: inputs.clone(), output: *o, coeff: format_rational(c) });
                }
            }
            entries.sort_by(|a, b| (&a.inputs, a.output).cmp(&(&b.inputs, b.output)));
            if !entries.is_empty() {
                brackets.push(BracketJson { arity: *k, entries });
            }
        }
        let pairing = self.pairing.as_ref().map(|p| {
            let mut entries = Vec::new();
            for i in 0..self.dim() {
                for (j, v) in p.matrix.row(i) {
                    if i <= *j {
                        entries.push(PairingEntryJson { left: i, right: *j, coeff: format_rational(v) });
                    }
                }
            }
            PairingJson { degree: p.degree, symplectic: self.symplectic, entries }
        });
        LinfJson {
            dim: self.dim(),
            degrees: self.space.degrees(),
            labels: Some(self.space.basis().iter().map(|b| b.label.clone()).collect()),
            brackets,
            pairing,
        }
    }

    pub fn from_json(j: &LinfJson) -> Result<Self> {
        if j.degrees.len() != j.dim {
            return Err(Error::InvalidInput(format!("dim is {} but {} degrees were given", j.dim, j.degrees.len())));
        }
        let labels: Vec<String> = match &j.labels {
            Some(l) if l.len() != j.dim => {
                return Err(Error::InvalidInput(format!("dim is {} but {} labels were given", j.dim, l.len())))
            }
            Some(l) => l.clone(),
            None => (0..j.dim).map(|i| format!("x{i}")).collect(),
        };
        let space = GradedSpace::new(
            labels.into_iter().zip(&j.degrees).map(|(label, d)| BasisElement { label, degree: *d }).collect(),
        )?;
        let mut alg = CyclicLInfinity::new(space);
        for (bi, b) in j.brackets.iter().enumerate() {
            if b.arity == 0 {
                return Err(Error::InvalidInput(format!("brackets[{bi}]: arity must be positive")));
            }
            let mut grouped: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
            for (ei, e) in b.entries.iter().enumerate() {
                if e.inputs.len() != b.arity {
                    return Err(Error::InvalidInput(format!(
                        "brackets[{bi}].entries[{ei}]: {} inputs for arity {}",
                        e.inputs.len(),
                        b.arity
                    )));
                }
                let c = parse_rational(&e.coeff)
                    .map_err(|err| Error::Parse(format!("brackets[{bi}].entries[{ei}].coeff: {err}")))?;
                sv_add(grouped.entry(e.inputs.clone()).or_default(), e.output, &c);
            }
            if b.arity == 1 {
                let n = alg.dim();
                let mut d = Matrix::zeros(n, n);
                for (inp, val) in grouped {
                    for (o, c) in val {
                        if o >= n || inp[0] >= n {
                            return Err(Error::InvalidInput(format!("brackets[{bi}]: index out of range")));
                        }
                        d.add_to(o, inp[0], &c);
                    }
                }
                alg.set_differential(d).map_err(|e| Error::InvalidInput(format!("brackets[{bi}]: {e}")))?;
            } else {
                for (inp, val) in grouped {
                    alg.set_bracket(&inp, val).map_err(|e| match e {
                        Error::Inconsistent(m) => Error::Inconsistent(format!("brackets[{bi}]: {m}")),
                        other => Error::InvalidInput(format!("brackets[{bi}]: {other}")),
                    })?;
                }
            }
        }
        if let Some(p) = &j.pairing {
            let mut entries = Vec::new();
            for (ei, e) in p.entries.iter().enumerate() {
                let c = parse_rational(&e.coeff)
                    .map_err(|err| Error::Parse(format!("pairing.entries[{ei}].coeff: {err}")))?;
                entries.push((e.left, e.right, c));
            }
            alg.set_pairing(p.degree, &entries, p.symplectic)?;
        }
        Ok(alg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntryJson {
    pub inputs: Vec<usize>,
    pub output: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub arity: usize,
    pub entries: Vec<BracketEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingEntryJson {
    pub left: usize,
    pub right: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingJson {
    pub degree: i32,
    #[serde(default)]
    pub symplectic: bool,
    pub entries: Vec<PairingEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinfJson {
    pub dim: usize,
    pub degrees: Vec<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn antisymmetric_completion() {
        let sp = GradedSpace::from_pairs([("a", -1), ("b", -1), ("c", -1)]);
        let mut g = CyclicLInfinity::new(sp);
        g.set_bracket(&[1, 0], SparseVec::from([(2, q(1))])).unwrap();
        assert_eq!(g.bracket_basis(&[0, 1]), SparseVec::from([(2, q(-1))]));
        assert!(g.set_bracket(&[0, 1], SparseVec::from([(2, q(1))])).is_err());
        assert!(g.set_bracket(&[0, 0], SparseVec::from([(2, q(1))])).is_err());
    }

    #[test]
    fn odd_elements_commute_in_brackets() {
        // F-degree 0 means L-degree 1: ℓ_2 is symmetric on such inputs
        let sp = GradedSpace::from_pairs([("a", 0), ("b", 0), ("c", 1)]);
        let mut g = CyclicLInfinity::new(sp);
        g.set_bracket(&[1, 0], SparseVec::from([(2, q(3))])).unwrap();
        assert_eq!(g.bracket_basis(&[0, 1]), SparseVec::from([(2, q(3))]));
        g.set_bracket(&[0, 0], SparseVec::from([(2, q(1))])).unwrap();
    }

    #[test]
    fn pairing_completion_and_degree_check() {
        let sp = GradedSpace::from_pairs([("v", 0), ("w", 0)]);
        let mut g = CyclicLInfinity::new(sp.clone());
        g.set_pairing(0, &[(0, 1, q(1))], true).unwrap();
        assert_eq!(g.pairing().unwrap().matrix.get(1, 0), q(-1));
        let mut h = CyclicLInfinity::new(sp);
        assert!(h.set_pairing(1, &[(0, 1, q(1))], false).is_err());
    }

    #[test]
    fn json_round_trip() {
        let sp = GradedSpace::from_pairs([("a", -1), ("b", -1), ("c", -1)]);
        let mut g = CyclicLInfinity::new(sp);
        g.set_bracket(&[0, 1], SparseVec::from([(2, q(1))])).unwrap();
        g.set_pairing(2, &[(0, 0, q(1)), (1, 1, q(1)), (2, 2, q(1))], true).unwrap();
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back = CyclicLInfinity::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
