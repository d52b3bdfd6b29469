use super::{CoringFiltration, ExtensionProblem};
use crate::chain::{ChainComplex, ChainMap, DegreeWindow};
use crate::cobar::{cobar_algebra, cobar_multiplication, Coaction, CobarAlgebra, CobarVariant, Word};
use crate::comodule::{FiltrationWitness, Side};
use crate::constructors::{first_factor_inclusion, normal_extension, ComodAlgMorphism, ComodAlgebra};
use crate::dg::{exterior_hopf_named, AlgebraMap, BialgebraMap, DGAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec};

/// Every basis element of `x` as a generator, one stage per degree.
pub fn degree_filtration(x: &ChainComplex) -> FiltrationWitness {
    let field = x.field();
    let stages = x
        .window()
        .degrees()
        .map(|d| (0..x.dim(d)).map(|i| (d, SparseVec::unit(i, field))).collect())
        .collect();
    FiltrationWitness { stages }
}

/// The homotopic normal-basis extension `(Γ, Ω(E;K;Γ))` with both cobar
/// algebras kept for inspection.
#[derive(Clone, Debug)]
pub struct NormalBasis {
    /// `Ω(E;K;H)`.
    pub source: CobarAlgebra,
    /// `Ω(E;K;K)`.
    pub target: CobarAlgebra,
    pub problem: ExtensionProblem,
}

/// Words `x ⊗ w ⊗ v` for a fixed word prefix and a vector `v` of last factors.
fn with_last(x: &crate::cobar::CobarComplex, prefix: &Word, deg: i64, v: &SparseVec) -> SparseVec {
    let terms: Vec<(Scalar, Word)> =
        v.iter().map(|(j, s)| (s.clone(), Word::new(prefix.left, prefix.letters.clone(), (deg, j)))).collect();
    x.collect(prefix.left.0 + prefix.letters_degree() + deg, terms)
}

/// `f` applied to the last factor of every word of `s`, landing in `t`.
fn on_last(s: &CobarAlgebra, t: &CobarAlgebra, f: &ChainMap) -> Result<ChainMap> {
    let (x, y) = (&s.cobar, &t.cobar);
    ChainMap::linear_from_fn(&x.complex, &y.complex, 0, |d, i| {
        let word = x.word((d, i));
        with_last(y, word, word.right.0, &f.image_of(word.right.0, word.right.1))
    })
}

/// `e` is a right `K`-comodule algebra and `Γ: H → K`. `k_over_h` is a
/// cellular filtration of `K` as a left `H`-module (through `Γ`), and
/// `retraction` a candidate `K → H`; both are carried over to the cobar
/// algebras on the last factor.
pub fn homotopic_normal_basis(
    e: &ComodAlgebra,
    gamma: &BialgebraMap,
    k_over_h: &FiltrationWitness,
    retraction: Option<&ChainMap>,
    w: DegreeWindow,
) -> Result<NormalBasis> {
    let (h, k) = (&gamma.source, &gamma.target);
    if e.h.complex() != k.complex() {
        return Err(Error::BaseMismatch("E must be a comodule algebra over the target of Γ".into()));
    }
    let m = Coaction::of_comod_algebra(e);
    // H as a left K-comodule algebra through (Γ ⊗ H)Δ.
    let n = Coaction::from_terms(h.complex(), &k.coalg, Side::Left, |c| {
        let mut out = Vec::new();
        for (s, a, b) in h.coalg.delta_terms(c) {
            for (j, t) in gamma.map.image_of(a.0, a.1).iter() {
                out.push((s.mul(t), (a.0, j), b));
            }
        }
        out
    });
    let source = cobar_algebra(&e.alg, &m, k, &h.alg, &n, w)?;
    let target = cobar_multiplication(e, k, CobarVariant::TwoSided, w)?;
    let hh = h.clone();
    let a = source.last_factor_coaction(h, |c| hh.coalg.delta_terms(c))?;
    let b = target.two_sided_comodule()?;
    let phi = AlgebraMap::new(&source.algebra, &target.algebra, on_last(&source, &target, &gamma.map)?)?;
    let morphism = ComodAlgMorphism::new(gamma, &a, &b, &phi)?;

    let y = &target.cobar;
    let one = e.alg.one();
    let mut stages = Vec::new();
    for stage in &k_over_h.stages {
        let mut gens = Vec::new();
        for (deg, v) in stage {
            let mut g = SparseVec::new();
            for (i, s) in one.iter() {
                g.axpy(s, &with_last(y, &Word::new((0, i), vec![], (0, 0)), *deg, v));
            }
            if w.contains(*deg) && !g.is_zero() {
                gens.push((*deg, g));
            }
        }
        stages.push(gens);
    }
    let mut problem = ExtensionProblem::new("homotopic normal basis", morphism, w)?.with_filtration(FiltrationWitness { stages });
    if let Some(r) = retraction {
        problem = problem.with_retract(on_last(&target, &source, r)?)?;
    }
    problem.fibrant = true;
    Ok(NormalBasis { source, target, problem })
}

/// `(id_H, ρ̃): (H, A) → (H, Ω(A;H;H))` with generators `1 ⊗ w ⊗ h` staged by
/// degree and the retraction `π`.
pub fn resolution_problem(ca: &ComodAlgebra, w: DegreeWindow) -> Result<(CobarAlgebra, ExtensionProblem)> {
    let h = &ca.h;
    let field = h.field();
    let two = cobar_multiplication(ca, h, CobarVariant::TwoSided, w)?;
    let b = two.two_sided_comodule()?;
    let phi = two.rho_tilde()?;
    let morphism = ComodAlgMorphism::new(&BialgebraMap::identity(h), ca, &b, &phi)?;
    let x = &two.cobar;
    let one = ca.alg.one();
    let mut stages = Vec::new();
    for d in w.degrees() {
        let mut gens = Vec::new();
        for word in x.words(d) {
            if word.left != (0, 0) {
                continue;
            }
            let g = x.collect(d, one.iter().map(|(i, s)| (s.clone(), Word::new((0, i), word.letters.clone(), word.right))));
            if !g.is_zero() {
                gens.push((d, g));
            }
        }
        stages.push(gens);
    }
    let pi = ChainMap::linear_from_fn(&x.complex, &ca.alg.complex, 0, |d, i| {
        let word = x.word((d, i));
        if !word.letters.is_empty() || !ca.alg.window().contains(word.left.0) {
            return SparseVec::new();
        }
        SparseVec::unit(word.left.1, field).scaled(&h.coalg.counit(word.right))
    })?;
    let problem = ExtensionProblem::new("cofree resolution", morphism, w)?
        .with_filtration(FiltrationWitness { stages })
        .with_retract(pi)?;
    Ok((two, problem))
}

/// Shipped extension problems on `w`. Coalgebras `K` that feed a cobar
/// construction are built one degree past `w`.
pub fn problem_catalog(field: crate::linalg::Field, w: DegreeWindow) -> Result<Vec<(&'static str, ExtensionProblem)>> {
    let up = DegreeWindow::new(w.lo, w.hi + 1)?;
    let x1 = exterior_hopf_named(field, &[("x", 1)], w)?;
    let y3 = exterior_hopf_named(field, &[("y", 3)], w)?;
    let x3 = exterior_hopf_named(field, &[("x", 3)], up)?;

    let eta = BialgebraMap::unit(&x1);
    let ground = ComodAlgebra::trivial(&eta.source.alg, &eta.source)?;
    let unit = ComodAlgMorphism::new(&eta, &ground, &ComodAlgebra::regular(&x1), &eta.algebra_map())?;
    let trivial = ComodAlgMorphism::new(&eta, &ground, &ComodAlgebra::trivial(&x1.alg, &x1)?, &eta.algebra_map())?;
    let normal = normal_extension(&DGAlgebra::ground(field, w), &first_factor_inclusion(&x1, &y3)?)?;

    let e = ComodAlgebra::trivial(&DGAlgebra::ground(field, w), &x3)?;
    let basis = |retract: bool| {
        let eps = x3.coalg.eps.clone();
        homotopic_normal_basis(&e, &BialgebraMap::unit(&x3), &degree_filtration(x3.complex()), retract.then_some(&eps), w)
    };
    let witnessed = basis(true)?.problem.with_coring_filtration(CoringFiltration::Canonical);
    let open = basis(false)?.problem;
    let (_, resolution) = resolution_problem(&ComodAlgebra::regular(&x3), w)?;
    Ok(vec![
        ("unit_lambda1", ExtensionProblem::new("unit into Λ(x₁)", unit, w)?),
        ("trivial_lambda1", ExtensionProblem::new("trivial coaction on Λ(x₁)", trivial, w)?),
        (
            "normal_lambda1_lambda3",
            ExtensionProblem::new("normal extension Λ(x₁) → Λ(x₁) ⊗ Λ(y₃)", normal, w)?
                .with_fibrant()
                .with_coring_filtration(CoringFiltration::Canonical),
        ),
        ("resolution_lambda3", resolution.with_coring_filtration(CoringFiltration::Canonical)),
        ("normal_basis_lambda3", witnessed),
        ("normal_basis_lambda3_open", open),
    ])
}
