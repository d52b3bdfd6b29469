//! Small, exactly known examples and single-coefficient mutations of them.

use std::collections::{BTreeMap, HashMap};

use super::algebra::{pair_product, DGAlgebra};
use super::bialgebra::{verify_bialgebra, DGBialgebra};
use super::coalgebra::{verify_coalgebra, DGCoalgebra, Term};
use super::algebra::verify_algebra;
use crate::chain::{verify_complex, ChainComplex, DegreeWindow, GradedSpace};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, SparseVec};
use crate::monoidal::{Cell, WordSpace};
use crate::report::CheckReport;

/// Any object the structure verifier understands.
#[derive(Clone, Debug)]
pub enum DGObject {
    Complex(ChainComplex),
    Algebra(DGAlgebra),
    Coalgebra(DGCoalgebra),
    Bialgebra(DGBialgebra),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Complex,
    Algebra,
    Coalgebra,
    Bialgebra,
}

impl DGObject {
    pub fn complex(&self) -> &ChainComplex {
        match self {
            DGObject::Complex(x) => x,
            DGObject::Algebra(a) => &a.complex,
            DGObject::Coalgebra(c) => &c.complex,
            DGObject::Bialgebra(h) => h.complex(),
        }
    }

    /// The richest structure carried.
    pub fn kind(&self) -> StructureKind {
        match self {
            DGObject::Complex(_) => StructureKind::Complex,
            DGObject::Algebra(_) => StructureKind::Algebra,
            DGObject::Coalgebra(_) => StructureKind::Coalgebra,
            DGObject::Bialgebra(_) => StructureKind::Bialgebra,
        }
    }
}

/// Checks the axioms of `kind`; fails with a shape error if the object does
/// not carry that structure.
pub fn verify_dg_structure(obj: &DGObject, kind: StructureKind) -> Result<CheckReport> {
    let mut rep = verify_complex(obj.complex());
    rep.name = format!("{kind:?}").to_lowercase();
    match (kind, obj) {
        (StructureKind::Complex, _) => {}
        (StructureKind::Algebra, DGObject::Algebra(a)) => rep.merge(verify_algebra(a)),
        (StructureKind::Algebra, DGObject::Bialgebra(h)) => rep.merge(verify_algebra(&h.alg)),
        (StructureKind::Coalgebra, DGObject::Coalgebra(c)) => rep.merge(verify_coalgebra(c)),
        (StructureKind::Coalgebra, DGObject::Bialgebra(h)) => rep.merge(verify_coalgebra(&h.coalg)),
        (StructureKind::Bialgebra, DGObject::Bialgebra(h)) => rep.merge(verify_bialgebra(h)),
        _ => return Err(Error::Shape(format!("object carries no {kind:?} structure"))),
    }
    Ok(rep)
}

/// Verifies whatever structure the object carries.
pub fn verify_object(obj: &DGObject) -> CheckReport {
    verify_dg_structure(obj, obj.kind()).expect("an object always carries its own kind")
}

/// `Δ` of a product determined multiplicatively from `Δ` on the factors.
fn delta_multiplicative(alg: &DGAlgebra, cc: &crate::monoidal::TensorSpace, x: (i64, &SparseVec), y: (i64, &SparseVec)) -> SparseVec {
    pair_product(alg, alg, cc, x.0, x.1, y.0, y.1)
}

fn terms_of(cc: &crate::monoidal::TensorSpace, n: i64, v: &SparseVec) -> Vec<Term> {
    cc.terms(n, v).map(|(s, k)| (s.clone(), k[0], k[1])).collect()
}

/// Exterior Hopf algebra on named odd generators; basis = square-free monomials
/// (names concatenated in generator order, `1` for the empty monomial), all
/// generators primitive, zero differential.
pub fn exterior_hopf_named(field: Field, gens: &[(&str, i64)], window: DegreeWindow) -> Result<DGBialgebra> {
    for &(_, d) in gens {
        if d <= 0 || d % 2 == 0 {
            return Err(Error::OddDegree(d));
        }
    }
    if !window.contains(0) {
        return Err(Error::WindowTooSmall("a bialgebra window must contain degree 0".into()));
    }
    let k = gens.len();
    let mut subsets: Vec<u32> = (0..(1u32 << k)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let deg = |s: u32| -> i64 { (0..k).filter(|i| s >> i & 1 == 1).map(|i| gens[i].1).sum() };
    let label = |s: u32| -> String {
        if s == 0 {
            "1".into()
        } else {
            (0..k).filter(|i| s >> i & 1 == 1).map(|i| gens[i].0).collect()
        }
    };
    let space = GradedSpace::from_labels(field, window, subsets.iter().map(|&s| (label(s), deg(s))))?;
    let cell: HashMap<u32, Cell> = subsets
        .iter()
        .filter_map(|&s| space.index(deg(s), &label(s)).map(|i| (s, (deg(s), i))))
        .collect();
    let subset_of: HashMap<Cell, u32> = cell.iter().map(|(s, c)| (*c, *s)).collect();
    let x = ChainComplex::zero_differential(space);
    let mul = |a: Cell, b: Cell| -> SparseVec {
        let (s, t) = (subset_of[&a], subset_of[&b]);
        if s & t != 0 {
            return SparseVec::new();
        }
        let mut inv = 0;
        for i in 0..k {
            if s >> i & 1 == 1 {
                inv += (0..i).filter(|j| t >> j & 1 == 1).count() as i64;
            }
        }
        match cell.get(&(s | t)) {
            Some(c) => SparseVec::unit(c.1, field).scaled(&field.sign(inv)),
            None => SparseVec::new(),
        }
    };
    let one = SparseVec::unit(cell[&0].1, field);
    let alg = DGAlgebra::from_table(&x, mul, one.clone(), Some(&|c: Cell| if c.0 == 0 { field.one() } else { field.zero() }))?;
    let coalg = multiplicative_coalgebra(&alg, &one, |c| {
        let s = subset_of[&c];
        if s.count_ones() <= 1 {
            None
        } else {
            let low = s & s.wrapping_neg();
            Some((cell[&low], cell[&(s ^ low)]))
        }
    })?;
    DGBialgebra::from_parts(alg, coalg)
}

/// `Λ` on odd generators of the given degrees, named `x` (one generator) or
/// `x1, x2, …`.
pub fn exterior_hopf(field: Field, degrees: &[i64], window: DegreeWindow) -> Result<DGBialgebra> {
    let names: Vec<String> = if degrees.len() == 1 {
        vec!["x".into()]
    } else {
        (1..=degrees.len()).map(|i| format!("x{i}")).collect()
    };
    let gens: Vec<(&str, i64)> = names.iter().map(|s| s.as_str()).zip(degrees.iter().copied()).collect();
    exterior_hopf_named(field, &gens, window)
}

/// Comultiplication on an algebra whose basis elements factor as products of a
/// generator and a shorter basis element (`split` returns that factorization,
/// `None` for generators and 1). Generators are primitive; `Δ` is extended
/// multiplicatively.
fn multiplicative_coalgebra(
    alg: &DGAlgebra,
    one: &SparseVec,
    split: impl Fn(Cell) -> Option<(Cell, Cell)>,
) -> Result<DGCoalgebra> {
    let field = alg.field();
    let x = &alg.complex;
    let cc = crate::monoidal::TensorSpace::new(&[x.space().clone(), x.space().clone()], x.window())?;
    let mut table: BTreeMap<Cell, SparseVec> = BTreeMap::new();
    let mut cells = x.space().elements();
    cells.sort_by_key(|c| c.0);
    let unit_cell = one.first().map(|(i, _)| (0, i));
    for &c in &cells {
        let v = if Some(c) == unit_cell {
            cc.pure(&[(0, one), (0, one)]).1
        } else {
            match split(c) {
                None => {
                    let e = SparseVec::unit(c.1, field);
                    let a = cc.pure(&[(c.0, &e), (0, one)]).1;
                    let b = cc.pure(&[(0, one), (c.0, &e)]).1;
                    a.add(&b)
                }
                Some((g, rest)) => {
                    // c = g · rest, so Δc = Δg · Δrest.
                    let prod = alg.mul_cells(g, rest);
                    let coef = prod.get(c.1).cloned().unwrap_or_else(|| field.zero());
                    let dv = delta_multiplicative(alg, &cc, (g.0, &table[&g]), (rest.0, &table[&rest]));
                    dv.scaled(&coef.inv())
                }
            }
        };
        table.insert(c, v);
    }
    DGCoalgebra::from_table(
        x,
        |c| terms_of(&cc, c.0, &table[&c]),
        |c| if Some(c) == unit_cell { field.one() } else { field.zero() },
        Some(one.clone()),
    )
}

/// Tensor algebra `T(V)` with concatenation and `V` primitive, truncated to the
/// window; `V` must sit in degrees >= 1.
pub fn free_primitive_bialgebra(v: &GradedSpace, window: DegreeWindow) -> Result<DGBialgebra> {
    let field = v.field();
    let ws = WordSpace::new(v, window)?;
    let x = ChainComplex::zero_differential(ws.space().clone());
    let one = SparseVec::unit(ws.index(&[]).expect("empty word").1, field);
    let mul = |a: Cell, b: Cell| -> SparseVec {
        let mut w = ws.word(a.0, a.1).to_vec();
        w.extend_from_slice(ws.word(b.0, b.1));
        match ws.index(&w) {
            Some((_, i)) => SparseVec::unit(i, field),
            None => SparseVec::new(),
        }
    };
    let alg = DGAlgebra::from_table(&x, mul, one.clone(), Some(&|c: Cell| if c.0 == 0 { field.one() } else { field.zero() }))?;
    let coalg = multiplicative_coalgebra(&alg, &one, |c| {
        let w = ws.word(c.0, c.1);
        if w.len() <= 1 {
            None
        } else {
            Some((ws.index(&w[..1]).unwrap(), ws.index(&w[1..]).unwrap()))
        }
    })?;
    DGBialgebra::from_parts(alg, coalg)
}

/// One generator `u` in degree 2.
pub fn free_u2(field: Field, window: DegreeWindow) -> Result<DGBialgebra> {
    let v = GradedSpace::from_labels(field, DegreeWindow::new(2, 2)?, [("u", 2)])?;
    free_primitive_bialgebra(&v, window)
}

/// `S2`: basis `1` (degree 0) and `y` (degree 2), `y` primitive.
pub fn s2(field: Field, window: DegreeWindow) -> Result<DGCoalgebra> {
    let space = GradedSpace::from_labels(field, window, [("1", 0), ("y", 2)])?;
    let x = ChainComplex::zero_differential(space);
    let one = field.one();
    DGCoalgebra::from_table(
        &x,
        |c| {
            if c.0 == 0 {
                vec![(one.clone(), (0, 0), (0, 0))]
            } else {
                vec![(one.clone(), (2, 0), (0, 0)), (one.clone(), (0, 0), (2, 0))]
            }
        },
        |c| if c.0 == 0 { field.one() } else { field.zero() },
        Some(SparseVec::unit(0, field)),
    )
}

/// `D`: one basis element in each of degrees 1 and 0, `d = id`.
pub fn acyclic_d(field: Field, window: DegreeWindow) -> Result<ChainComplex> {
    let space = GradedSpace::from_labels(field, window, [("a", 1), ("b", 0)])?;
    let mut d = BTreeMap::new();
    if space.dim(1) == 1 && space.dim(0) == 1 {
        d.insert(1, Matrix::identity(field, 1));
    }
    ChainComplex::new(space, d)
}

/// `Λ(x₁) ⊗ Λ(y₃)`.
pub fn lambda_x1_y3(field: Field, window: DegreeWindow) -> Result<DGBialgebra> {
    let h = exterior_hopf_named(field, &[("x", 1)], window)?;
    let k = exterior_hopf_named(field, &[("y", 3)], window)?;
    DGBialgebra::tensor(&h, &k, window)
}

/// The shipped examples, by name.
pub fn catalog(field: Field, window: DegreeWindow) -> Result<Vec<(&'static str, DGObject)>> {
    Ok(vec![
        ("ground", DGObject::Bialgebra(DGBialgebra::ground(field, window))),
        ("lambda1", DGObject::Bialgebra(exterior_hopf(field, &[1], window)?)),
        ("lambda3", DGObject::Bialgebra(exterior_hopf(field, &[3], window)?)),
        ("lambda1_lambda3", DGObject::Bialgebra(lambda_x1_y3(field, window)?)),
        ("s2", DGObject::Coalgebra(s2(field, window)?)),
        ("free_u2", DGObject::Bialgebra(free_u2(field, window)?)),
        ("d", DGObject::Complex(acyclic_d(field, window)?)),
    ])
}

/// A catalog object with one coefficient changed, and the axiom it must break.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub name: &'static str,
    pub object: DGObject,
    pub axiom: &'static str,
}

fn with_delta(c: &DGCoalgebra, cell: Cell, terms: Vec<Term>) -> Result<DGCoalgebra> {
    DGCoalgebra::from_table(
        &c.complex,
        |x| if x == cell { terms.clone() } else { c.delta_terms(x) },
        |x| c.counit(x),
        c.unit(),
    )
}

fn coef_of(terms: &[Term], a: Cell, b: Cell) -> Option<usize> {
    terms.iter().position(|t| t.1 == a && t.2 == b)
}

/// Single-coefficient mutations, each breaking a named axiom over any field.
pub fn mutations(field: Field, window: DegreeWindow) -> Result<Vec<Mutation>> {
    let mut out = Vec::new();

    // Λ(x₁): drop the 1⊗x term of Δx.
    let l1 = exterior_hopf(field, &[1], window)?;
    let x = (1, 0);
    let mut t = l1.coalg.delta_terms(x);
    t.retain(|term| term.1 != (0, 0));
    let c = with_delta(&l1.coalg, x, t)?;
    out.push(Mutation {
        name: "lambda1_noncounital",
        object: DGObject::Bialgebra(DGBialgebra::from_parts(l1.alg.clone(), c)?),
        axiom: "left counit",
    });

    // Λ(x₃): flip the sign of 1⊗x in Δx (invisible in characteristic 2).
    if field != Field::Prime(2) {
        let l3 = exterior_hopf(field, &[3], window)?;
        let x = (3, 0);
        let mut t = l3.coalg.delta_terms(x);
        let i = coef_of(&t, (0, 0), x).expect("primitive term");
        t[i].0 = t[i].0.neg();
        let c = with_delta(&l3.coalg, x, t)?;
        out.push(Mutation {
            name: "lambda3_sign_flip",
            object: DGObject::Bialgebra(DGBialgebra::from_parts(l3.alg.clone(), c)?),
            axiom: "coassociativity",
        });
    }

    // Λ(x₃): unit scaled by 2 (zero in characteristic 2).
    let l3 = exterior_hopf(field, &[3], window)?;
    let two_one = l3.alg.one().scaled(&field.int(2));
    let a = DGAlgebra::from_table(
        &l3.alg.complex,
        |p, q| l3.alg.mul_cells(p, q),
        two_one,
        Some(&|c: Cell| l3.alg.augment(c.0, &SparseVec::unit(c.1, field))),
    )?;
    out.push(Mutation {
        name: "lambda3_unit",
        object: DGObject::Algebra(a),
        axiom: "left unit",
    });

    // S2: drop the 1⊗y term of Δy.
    let s = s2(field, window)?;
    let y = (2, 0);
    let mut t = s.delta_terms(y);
    t.retain(|term| term.1 != (0, 0));
    out.push(Mutation { name: "s2_noncounital", object: DGObject::Coalgebra(with_delta(&s, y, t)?), axiom: "left counit" });

    // T(u₂): coefficient of u⊗u in Δ(u|u) changed from 2 to 3.
    let f = free_u2(field, window)?;
    if f.complex().dim(4) == 1 {
        let uu = (4, 0);
        let mut t = f.coalg.delta_terms(uu);
        let i = coef_of(&t, (2, 0), (2, 0));
        match i {
            Some(i) => t[i].0 = field.int(3),
            None => t.push((field.int(3), (2, 0), (2, 0))),
        }
        let c = with_delta(&f.coalg, uu, t)?;
        out.push(Mutation {
            name: "free_u2_shuffle",
            object: DGObject::Bialgebra(DGBialgebra::from_parts(f.alg.clone(), c)?),
            axiom: "Δ multiplicative",
        });
    }

    // D extended by a degree-2 cell with d = id, so d² = id.
    let space = GradedSpace::from_labels(field, window, [("c", 2), ("a", 1), ("b", 0)])?;
    if space.dim(2) == 1 {
        let mut d = BTreeMap::new();
        d.insert(1, Matrix::identity(field, 1));
        d.insert(2, Matrix::identity(field, 1));
        out.push(Mutation {
            name: "d_square_nonzero",
            object: DGObject::Complex(ChainComplex::from_parts(space, d)?),
            axiom: "d^2 = 0",
        });
    }
    Ok(out)
}
