use std::collections::{BTreeMap, HashMap};

use super::algebra::{cobar_multiplication, CobarAlgebra, CobarVariant};
use super::complex::{connected_gate, Word};
use crate::chain::{ChainComplex, ChainMap, DegreeWindow, GradedSpace, TrustedRange};
use crate::constructors::ComodAlgebra;
use crate::dg::{DGAlgebra, DGBialgebra, DGCoalgebra, Term};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec};
use crate::monoidal::{words_up_to, Cell};
use crate::report::CheckReport;

/// Reduced bar construction `[a₁|⋯|a_k]` with `|[a₁|⋯|a_k]| = Σ(|aᵢ| + 1)`,
/// deconcatenation coproduct.
#[derive(Clone, Debug)]
pub struct BarCoalgebra {
    pub algebra: DGAlgebra,
    pub coalgebra: DGCoalgebra,
    pub range: TrustedRange,
    words: BTreeMap<i64, Vec<Vec<Cell>>>,
    index: HashMap<Vec<Cell>, Cell>,
}

fn wrap(l: &str) -> String {
    if l.contains('⊗') || l.contains('|') {
        format!("({l})")
    } else {
        l.to_string()
    }
}

pub fn bar(a: &DGAlgebra, w: DegreeWindow) -> Result<BarCoalgebra> {
    connected_gate(a)?;
    if a.augmentation.is_none() {
        return Err(Error::NonConnected("bar construction needs an augmentation".into()));
    }
    if w.lo > 0 || !w.contains(0) {
        return Err(Error::WindowTooSmall(format!("bar window {w} must contain degree 0")));
    }
    if a.window().hi < w.hi - 1 {
        return Err(Error::WindowTooSmall(format!("algebra known up to {}, bar needs {}", a.window().hi, w.hi - 1)));
    }
    let field = a.field();
    let abar = a.complex.space().restrict(DegreeWindow::new(1, a.window().hi.max(1))?);
    let mut shifted = BTreeMap::new();
    for (d, ls) in abar.basis() {
        shifted.insert(d + 1, ls.clone());
    }
    let letters = GradedSpace::new(field, DegreeWindow::new(2, a.window().hi.max(1) + 1)?, shifted)?;
    let mut words: BTreeMap<i64, Vec<Vec<Cell>>> = BTreeMap::new();
    for l in words_up_to(&letters, w.hi)? {
        let word: Vec<Cell> = l.iter().map(|&(d, i)| (d - 1, i)).collect();
        words.entry(bar_degree(&word)).or_default().push(word);
    }
    let mut index = HashMap::new();
    let mut basis = BTreeMap::new();
    for (d, ws) in words.iter_mut() {
        ws.sort();
        let mut labels = Vec::new();
        for (i, word) in ws.iter().enumerate() {
            index.insert(word.clone(), (*d, i));
            let ls: Vec<String> = word.iter().map(|&c| wrap(a.label(c))).collect();
            labels.push(format!("[{}]", ls.join("|")));
        }
        basis.insert(*d, labels);
    }
    let space = GradedSpace::new(field, w, basis)?;
    let complex = ChainComplex::from_fn(space, |d, i| {
        let word = &words[&d][i];
        let mut out = SparseVec::new();
        let mut n = 0;
        for (j, &aj) in word.iter().enumerate() {
            let s = field.sign(n);
            for (k, t) in a.complex.apply_d(aj.0, &SparseVec::unit(aj.1, field)).iter() {
                if aj.0 - 1 >= 1 {
                    let mut v = word.clone();
                    v[j] = (aj.0 - 1, k);
                    if let Some(&(_, c)) = index.get(&v) {
                        out.add_at(c, &t.mul(&s).neg());
                    }
                }
            }
            if j > 0 {
                let prev = word[j - 1];
                for (k, t) in a.mul_cells(prev, aj).iter() {
                    let mut v = word[..j - 1].to_vec();
                    v.push((prev.0 + aj.0, k));
                    v.extend_from_slice(&word[j + 1..]);
                    if let Some(&(_, c)) = index.get(&v) {
                        out.add_at(c, &t.mul(&s));
                    }
                }
            }
            n += aj.0 + 1;
        }
        out
    })?;
    let empty = index[&Vec::new()];
    let coalgebra = DGCoalgebra::new(
        &complex,
        |c| {
            let word = &words[&c.0][c.1];
            (0..=word.len())
                .map(|k| (field.one(), index[&word[..k].to_vec()], index[&word[k..].to_vec()]))
                .collect::<Vec<Term>>()
        },
        |c| if c == empty { field.one() } else { field.zero() },
        Some(SparseVec::unit(empty.1, field)),
    )?;
    Ok(BarCoalgebra { algebra: a.clone(), coalgebra, range: w.trusted(), words, index })
}

fn bar_degree(word: &[Cell]) -> i64 {
    word.iter().map(|c| c.0 + 1).sum()
}

impl BarCoalgebra {
    pub fn complex(&self) -> &ChainComplex {
        &self.coalgebra.complex
    }

    pub fn word(&self, c: Cell) -> &[Cell] {
        &self.words[&c.0][c.1]
    }

    pub fn index(&self, w: &[Cell]) -> Option<Cell> {
        self.index.get(w).copied()
    }
}

/// Comultiplicativity and counitality of a degree-0 map of coalgebras.
pub fn verify_coalgebra_map(s: &DGCoalgebra, t: &DGCoalgebra, f: &ChainMap) -> CheckReport {
    let mut rep = CheckReport::new("coalgebra map");
    let chain = f.verify();
    rep.merge(chain);
    rep.checked("comultiplicative");
    rep.checked("counital");
    for x in s.complex.space().elements() {
        if !t.window().contains(x.0) {
            continue;
        }
        let fx = f.image_of(x.0, x.1);
        let l = t.delta.apply(x.0, &fx);
        let mut r = SparseVec::new();
        for (c, a, b) in s.delta_terms(x) {
            let (_, v) = t.cc.layout.pure(&[(a.0, &f.image_of(a.0, a.1)), (b.0, &f.image_of(b.0, b.1))]);
            r.axpy(&c, &v);
        }
        if l != r {
            rep.fail("comultiplicative", Some(x.0), vec![s.label(x).into()], "Δf != (f⊗f)Δ");
        }
        if t.counit_vec(x.0, &fx) != s.counit(x) {
            rep.fail("counital", Some(x.0), vec![s.label(x).into()], "εf != ε");
        }
    }
    rep
}

/// `H → Bar Ω H`, `c ↦ Σ_k [s⁻¹c₁|⋯|s⁻¹c_k]` over the iterated reduced
/// coproduct.
#[derive(Clone, Debug)]
pub struct CobarBarCounit {
    pub omega: CobarAlgebra,
    pub bar: BarCoalgebra,
    pub map: ChainMap,
}

/// `H` is read on its own window `[0, N]`; `Ω H` is built on `[0, N−1]` and
/// the bar construction on `[0, N]`.
pub fn cobar_bar_counit(h: &DGBialgebra) -> Result<CobarBarCounit> {
    let field = h.field();
    let hw = h.window();
    let g = DGAlgebra::ground(field, hw);
    let ca = ComodAlgebra::trivial(&g, h)?;
    let omega = cobar_multiplication(&ca, h, CobarVariant::Left, DegreeWindow::new(hw.lo, hw.hi - 1)?)?;
    let b = bar(&omega.algebra, hw)?;
    let iterated = |c: Cell| -> Vec<(Scalar, Vec<Cell>)> {
        let mut done = Vec::new();
        let mut stack = vec![(field.one(), Vec::new(), c)];
        while let Some((s, pre, c)) = stack.pop() {
            let mut whole = pre.clone();
            whole.push(c);
            done.push((s.clone(), whole));
            for (t, x, y) in h.coalg.delta_terms(c) {
                if x.0 >= 1 && y.0 >= 1 {
                    let mut p = pre.clone();
                    p.push(x);
                    stack.push((s.mul(&t), p, y));
                }
            }
        }
        done
    };
    let o = &omega.cobar;
    let map = ChainMap::linear_from_fn(h.complex(), b.complex(), 0, |d, i| {
        if d == 0 {
            return b.index(&[]).map(|(_, j)| SparseVec::unit(j, field).scaled(&h.coalg.counit((0, i)))).unwrap_or_default();
        }
        let mut out = SparseVec::new();
        for (s, parts) in iterated((d, i)) {
            let letters: Option<Vec<Cell>> = parts.iter().map(|&p| o.index(&Word::new((0, 0), vec![p], (0, 0)))).collect();
            if let Some(bw) = letters.and_then(|l| b.index(&l)) {
                out.add_at(bw.1, &s);
            }
        }
        out
    })?;
    Ok(CobarBarCounit { omega, bar: b, map })
}

pub fn verify_counit(c: &CobarBarCounit, h: &DGBialgebra) -> CheckReport {
    verify_coalgebra_map(&h.coalg, &c.bar.coalgebra, &c.map)
}
