use std::collections::{BTreeMap, HashMap};

use crate::chain::{ChainComplex, DegreeWindow, GradedSpace, TrustedRange};
use crate::comodule::{tensor_over, verify_comodule, AModule, Comodule, Coring, Side};
use crate::constructors::ComodAlgebra;
use crate::dg::{DGAlgebra, DGCoalgebra};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseVec};
use crate::monoidal::{desuspend, words_up_to, Cell};
use crate::report::CheckReport;

/// A coaction of a coalgebra over the ground field, stored as pure tensors of
/// basis cells: `(coefficient, module cell, coalgebra cell)` on the right,
/// `(coefficient, coalgebra cell, module cell)` on the left.
#[derive(Clone, Debug)]
pub struct Coaction {
    pub complex: ChainComplex,
    /// Underlying complex of the coalgebra.
    pub coalg: ChainComplex,
    pub side: Side,
    terms: BTreeMap<Cell, Vec<(Scalar, Cell, Cell)>>,
}

impl Coaction {
    pub fn from_terms(complex: &ChainComplex, c: &DGCoalgebra, side: Side, mut f: impl FnMut(Cell) -> Vec<(Scalar, Cell, Cell)>) -> Coaction {
        let terms = complex.space().elements().into_iter().map(|x| (x, f(x))).collect();
        Coaction { complex: complex.clone(), coalg: c.complex.clone(), side, terms }
    }

    /// `x ↦ x ⊗ g` or `g ⊗ x`.
    pub fn trivial(complex: &ChainComplex, c: &DGCoalgebra, side: Side) -> Result<Coaction> {
        let g = c.unit().ok_or_else(|| Error::Shape("trivial coaction needs a coaugmented coalgebra".into()))?;
        Ok(Coaction::from_terms(complex, c, side, |x| {
            g.iter()
                .map(|(j, s)| match side {
                    Side::Right => (s.clone(), x, (0, j)),
                    Side::Left => (s.clone(), (0, j), x),
                })
                .collect()
        }))
    }

    /// The ground field with the trivial coaction.
    pub fn ground(c: &DGCoalgebra, side: Side) -> Result<Coaction> {
        Coaction::trivial(&ChainComplex::ground(c.field(), c.window()), c, side)
    }

    /// `C` coacting on itself by `Δ`.
    pub fn regular(c: &DGCoalgebra, side: Side) -> Coaction {
        Coaction::from_terms(&c.complex, c, side, |x| c.delta_terms(x))
    }

    pub fn of_comod_algebra(a: &ComodAlgebra) -> Coaction {
        Coaction::from_terms(&a.alg.complex, &a.h.coalg, Side::Right, |x| a.coaction_terms(x))
    }

    /// A comodule over a coalgebra viewed as a coring over the ground field.
    pub fn of_comodule(m: &Comodule) -> Result<Coaction> {
        if !m.coring.over_ground() {
            return Err(Error::BaseMismatch("cobar inputs must be comodules over the ground field".into()));
        }
        let terms = m.complex().space().elements().into_iter().map(|x| (x, m.coaction_terms(x))).collect();
        Ok(Coaction { complex: m.complex().clone(), coalg: m.coring.complex().clone(), side: m.side(), terms })
    }

    pub fn terms(&self, x: Cell) -> &[(Scalar, Cell, Cell)] {
        self.terms.get(&x).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn to_comodule(&self, c: &DGCoalgebra) -> Result<Comodule> {
        if c.complex != self.coalg {
            return Err(Error::BaseMismatch("coaction over a different coalgebra".into()));
        }
        let field = c.field();
        let coring = Coring::from_coalgebra(c);
        let module = AModule::from_fn(&coring.base, &self.complex, self.side, |m, _| SparseVec::unit(m.1, field))?;
        let target = match self.side {
            Side::Right => tensor_over(&module, &coring.bimodule.left)?,
            Side::Left => tensor_over(&coring.bimodule.right, &module)?,
        };
        Comodule::from_fn(&coring, &module, |x| {
            let mut v = SparseVec::new();
            for (s, a, b) in self.terms(x) {
                v.axpy(s, &target.class_cells(*a, *b));
            }
            v
        })
    }
}

pub fn verify_coaction(a: &Coaction, c: &DGCoalgebra) -> Result<CheckReport> {
    Ok(verify_comodule(&a.to_comodule(c)?))
}

/// Basis element `x ⊗ s⁻¹c₁|⋯|s⁻¹c_k ⊗ y`; letters are cells of `C` in
/// positive degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub left: Cell,
    pub letters: Vec<Cell>,
    pub right: Cell,
}

impl Word {
    pub fn new(left: Cell, letters: Vec<Cell>, right: Cell) -> Word {
        Word { left, letters, right }
    }

    /// `Σ (|cᵢ| − 1)`.
    pub fn letters_degree(&self) -> i64 {
        self.letters.iter().map(|c| c.0 - 1).sum()
    }

    pub fn degree(&self) -> i64 {
        self.left.0 + self.letters_degree() + self.right.0
    }
}

/// `C_0 = R·g` and `C_1 = 0`, so `C̄` sits in degrees `≥ 2`.
pub(crate) fn simply_connected_gate(c: &DGCoalgebra) -> Result<SparseVec> {
    let g = c.unit().ok_or_else(|| Error::NonSimplyConnected("coalgebra has no coaugmentation".into()))?;
    if let Some(d) = c.complex.space().min_degree() {
        if d < 0 {
            return Err(Error::NonSimplyConnected(format!("cells in negative degree {d}")));
        }
    }
    if c.complex.dim(0) != 1 {
        return Err(Error::NonSimplyConnected(format!("degree 0 has dimension {}", c.complex.dim(0))));
    }
    if c.complex.dim(1) != 0 {
        return Err(Error::NonSimplyConnected("the coaugmentation coideal has elements in degree 1".into()));
    }
    Ok(g)
}

fn wrap(l: &str) -> String {
    if l.contains('⊗') || l.contains('|') {
        format!("({l})")
    } else {
        l.to_string()
    }
}

/// `Ω(M; C; N) = M ⊗ T(s⁻¹C̄) ⊗ N` with the cobar differential.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    pub left: Coaction,
    pub coalg: DGCoalgebra,
    pub right: Coaction,
    pub complex: ChainComplex,
    pub range: TrustedRange,
    words: BTreeMap<i64, Vec<Word>>,
    index: HashMap<Word, Cell>,
}

fn sign(field: Field, e: i64) -> Scalar {
    field.sign(e)
}

/// Builds `Ω(M; C; N)` on `w`, re-verifying `d² = 0`. The window must start at
/// or below the lowest word and the inputs must be known far enough up for
/// every word and differential in `w`.
pub fn cobar(m: &Coaction, c: &DGCoalgebra, n: &Coaction, w: DegreeWindow) -> Result<CobarComplex> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::Shape("cobar takes a right comodule and a left comodule".into()));
    }
    simply_connected_gate(c)?;
    for (name, a) in [("left", m), ("right", n)] {
        let rep = verify_coaction(a, c)?;
        if !rep.passed() {
            return Err(Error::Axiom {
                axiom: format!("{name} input is a comodule"),
                degree: None,
                witness: rep.failed_axioms().join(", "),
            });
        }
    }
    let field = c.field();
    let mlo = m.complex.space().min_degree();
    let nlo = n.complex.space().min_degree();
    if let (Some(ml), Some(nl)) = (mlo, nlo) {
        if w.lo > ml + nl {
            return Err(Error::WindowTooSmall(format!("window {w} starts above the lowest word in degree {}", ml + nl)));
        }
        if c.window().hi < w.hi + 1 - ml - nl {
            return Err(Error::WindowTooSmall(format!("coalgebra known up to {}, cobar needs {}", c.window().hi, w.hi + 1 - ml - nl)));
        }
        if m.complex.window().hi < w.hi - nl || n.complex.window().hi < w.hi - ml {
            return Err(Error::WindowTooSmall("comodule windows end below the cobar window".into()));
        }
    }

    let cbar = c.complex.space().restrict(DegreeWindow::new(1, c.window().hi.max(1))?);
    let letters = desuspend(&cbar);
    let mut words: BTreeMap<i64, Vec<Word>> = BTreeMap::new();
    if let (Some(ml), Some(nl)) = (mlo, nlo) {
        let ws = words_up_to(&letters, w.hi - ml - nl)?;
        for x in m.complex.space().elements() {
            for y in n.complex.space().elements() {
                for l in &ws {
                    let word = Word::new(x, l.iter().map(|&(d, i)| (d + 1, i)).collect(), y);
                    let d = word.degree();
                    if w.contains(d) {
                        words.entry(d).or_default().push(word);
                    }
                }
            }
        }
    }
    for ws in words.values_mut() {
        ws.sort();
    }
    let mut index = HashMap::new();
    let mut basis = BTreeMap::new();
    for (d, ws) in &words {
        let mut labels = Vec::new();
        for (i, word) in ws.iter().enumerate() {
            index.insert(word.clone(), (*d, i));
            let ls: Vec<String> = word.letters.iter().map(|l| wrap(c.complex.label(l.0, l.1))).collect();
            labels.push(format!(
                "{}⊗[{}]⊗{}",
                wrap(m.complex.label(word.left.0, word.left.1)),
                ls.join("|"),
                wrap(n.complex.label(word.right.0, word.right.1))
            ));
        }
        basis.insert(*d, labels);
    }
    let space = GradedSpace::new(field, w, basis)?;
    let mut missing = None;
    let complex = ChainComplex::from_fn(space, |deg, i| {
        let word = &words[&deg][i];
        let mut out = SparseVec::new();
        for (s, t) in differential_terms(m, c, n, word) {
            match index.get(&t) {
                Some(&(_, j)) => out.add_at(j, &s),
                None if w.contains(t.degree()) => missing = Some(t),
                None => {}
            }
        }
        out
    })?;
    if let Some(t) = missing {
        return Err(Error::Construction(format!("differential reaches a word outside the basis: {t:?}")));
    }
    Ok(CobarComplex { left: m.clone(), coalg: c.clone(), right: n.clone(), complex, range: w.trusted(), words, index })
}

/// The six summands of `d_Ω` on one basis word, signs by the Koszul rule with
/// `d(s⁻¹c) = −s⁻¹dc`.
fn differential_terms(m: &Coaction, c: &DGCoalgebra, n: &Coaction, word: &Word) -> Vec<(Scalar, Word)> {
    let field = c.field();
    let (x, y) = (word.left, word.right);
    let wdeg = word.letters_degree();
    let mut out = Vec::new();
    for (i, s) in m.complex.apply_d(x.0, &SparseVec::unit(x.1, field)).iter() {
        out.push((s.clone(), Word::new((x.0 - 1, i), word.letters.clone(), y)));
    }
    let mut pre = x.0;
    for (j, &cj) in word.letters.iter().enumerate() {
        let sj = sign(field, pre);
        let splice = |mid: &[Cell]| {
            let mut l = word.letters[..j].to_vec();
            l.extend_from_slice(mid);
            l.extend_from_slice(&word.letters[j + 1..]);
            Word::new(x, l, y)
        };
        if cj.0 - 1 >= 1 {
            for (i, s) in c.complex.apply_d(cj.0, &SparseVec::unit(cj.1, field)).iter() {
                out.push((s.mul(&sj).neg(), splice(&[(cj.0 - 1, i)])));
            }
        }
        for (s, a, b) in c.delta_terms(cj) {
            if a.0 >= 1 && b.0 >= 1 {
                out.push((s.mul(&sj).mul(&sign(field, a.0)), splice(&[a, b])));
            }
        }
        pre += cj.0 - 1;
    }
    let sy = sign(field, x.0 + wdeg);
    for (i, s) in n.complex.apply_d(y.0, &SparseVec::unit(y.1, field)).iter() {
        out.push((s.mul(&sy), Word::new(x, word.letters.clone(), (y.0 - 1, i))));
    }
    for (s, xi, ci) in m.terms(x) {
        if ci.0 >= 1 {
            let mut l = vec![*ci];
            l.extend_from_slice(&word.letters);
            out.push((s.mul(&sign(field, xi.0)).neg(), Word::new(*xi, l, y)));
        }
    }
    for (s, ci, yi) in n.terms(y) {
        if ci.0 >= 1 {
            let mut l = word.letters.clone();
            l.push(*ci);
            out.push((s.mul(&sy), Word::new(x, l, *yi)));
        }
    }
    out
}

impl CobarComplex {
    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.complex.window()
    }

    pub fn words(&self, n: i64) -> &[Word] {
        self.words.get(&n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn word(&self, c: Cell) -> &Word {
        &self.words[&c.0][c.1]
    }

    pub fn index(&self, w: &Word) -> Option<Cell> {
        self.index.get(w).copied()
    }

    /// Sum of words as a vector in degree `n`; words outside the window drop out.
    pub fn collect(&self, n: i64, terms: impl IntoIterator<Item = (Scalar, Word)>) -> SparseVec {
        let mut out = SparseVec::new();
        for (s, w) in terms {
            if let Some((d, j)) = self.index(&w) {
                debug_assert_eq!(d, n);
                out.add_at(j, &s);
            }
        }
        out
    }

    /// `x ⊗ s⁻¹c₁|⋯ ⊗ y` for homogeneous vectors; letters are vectors of `C`
    /// in positive degree.
    pub fn elem(&self, x: (i64, &SparseVec), letters: &[(i64, &SparseVec)], y: (i64, &SparseVec)) -> SparseVec {
        let field = self.field();
        let mut partial: Vec<(Scalar, Vec<Cell>)> = vec![(field.one(), Vec::new())];
        for &(d, v) in letters {
            let mut next = Vec::new();
            for (s, l) in &partial {
                for (i, t) in v.iter() {
                    let mut l2 = l.clone();
                    l2.push((d, i));
                    next.push((s.mul(t), l2));
                }
            }
            partial = next;
        }
        let n = x.0 + letters.iter().map(|(d, _)| d - 1).sum::<i64>() + y.0;
        let mut terms = Vec::new();
        for (i, a) in x.1.iter() {
            for (j, b) in y.1.iter() {
                for (s, l) in &partial {
                    terms.push((a.mul(b).mul(s), Word::new((x.0, i), l.clone(), (y.0, j))));
                }
            }
        }
        self.collect(n, terms)
    }

    /// Word length of a basis cell.
    pub fn length(&self, c: Cell) -> usize {
        self.word(c).letters.len()
    }
}

/// Whether `a` has `A_0 = R·1` and nothing below.
pub(crate) fn connected_gate(a: &DGAlgebra) -> Result<()> {
    if let Some(d) = a.complex.space().min_degree() {
        if d < 0 {
            return Err(Error::NonConnected(format!("cells in negative degree {d}")));
        }
    }
    if a.complex.dim(0) != 1 {
        return Err(Error::NonConnected(format!("degree 0 has dimension {}", a.complex.dim(0))));
    }
    Ok(())
}
