use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::chain::{ChainComplex, ChainMap, DegreeWindow, GradedSpace, TrustedRange};
use crate::comodule::FiltrationWitness;
use crate::constructors::{ComodAlgMorphism, ComodAlgebra};
use crate::dg::{AlgebraMap, BialgebraMap, DGAlgebra, DGBialgebra, DGCoalgebra, Term};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseVec};
use crate::monoidal::{Cell, Tensor};
use crate::verdict::{CoringFiltration, ExtensionProblem};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectKind {
    Complex,
    Algebra,
    Coalgebra,
    Bialgebra,
    ComoduleAlgebra,
    /// A coalgebra over the ground field.
    Coring,
    ExtensionProblem,
}

/// Residues are integers, rationals are `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Residue(u64),
    Rational(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub degree: i64,
    pub labels: Vec<String>,
}

/// One row of a structure map: the image of a basis word as a sum of words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    #[serde(rename = "in")]
    pub input: Vec<String>,
    #[serde(rename = "out")]
    pub output: Vec<(Coef, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageGenerator {
    pub degree: i64,
    pub vector: Vec<(Coef, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Stages of generators of `B` as a left `A`-module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<Vec<StageGenerator>>>,
    /// `"canonical"` or `"missing"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coring_filtration: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub fibrant: bool,
}

/// A sub-object, inline or as a path relative to the enclosing file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Part {
    Path(String),
    Inline(Box<ObjectDocument>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDocument {
    pub schema_version: u32,
    pub kind: ObjectKind,
    pub field: String,
    pub window: [i64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trusted: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Vec<Entry>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parts: BTreeMap<String, Part>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<WitnessBlock>,
}

#[derive(Clone, Debug)]
pub enum Object {
    Complex { complex: ChainComplex, trusted: Option<TrustedRange> },
    Algebra(DGAlgebra),
    Coalgebra(DGCoalgebra),
    Bialgebra(DGBialgebra),
    ComodAlgebra(ComodAlgebra),
    Coring(DGCoalgebra),
    Extension(ExtensionProblem),
}

impl Object {
    pub fn kind(&self) -> ObjectKind {
        match self {
            Object::Complex { .. } => ObjectKind::Complex,
            Object::Algebra(_) => ObjectKind::Algebra,
            Object::Coalgebra(_) => ObjectKind::Coalgebra,
            Object::Bialgebra(_) => ObjectKind::Bialgebra,
            Object::ComodAlgebra(_) => ObjectKind::ComoduleAlgebra,
            Object::Coring(_) => ObjectKind::Coring,
            Object::Extension(_) => ObjectKind::ExtensionProblem,
        }
    }

    /// The underlying complex, where there is a single one.
    pub fn complex(&self) -> Option<&ChainComplex> {
        match self {
            Object::Complex { complex, .. } => Some(complex),
            Object::Algebra(a) => Some(&a.complex),
            Object::Coalgebra(c) | Object::Coring(c) => Some(&c.complex),
            Object::Bialgebra(h) => Some(h.complex()),
            Object::ComodAlgebra(a) => Some(&a.alg.complex),
            Object::Extension(_) => None,
        }
    }
}

fn parse_err(at: &str, message: impl Into<String>) -> Error {
    Error::Parse { position: at.to_string(), message: message.into() }
}

fn json_err(e: serde_json::Error) -> Error {
    parse_err(&format!("{}:{}", e.line(), e.column()), e.to_string())
}

// ---------------------------------------------------------------- loading

/// Parses and eagerly verifies a document; path parts are resolved against
/// the working directory.
pub fn load_str(text: &str) -> Result<Object> {
    let doc: ObjectDocument = serde_json::from_str(text).map_err(json_err)?;
    Loader::default().object(&doc, None)
}

pub fn load_path(path: &Path) -> Result<Object> {
    Loader::default().file(path)
}

#[derive(Default)]
struct Loader {
    stack: Vec<PathBuf>,
}

impl Loader {
    fn file(&mut self, path: &Path) -> Result<Object> {
        let canon = path.canonicalize().map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if self.stack.contains(&canon) {
            return Err(parse_err(&path.display().to_string(), "cyclic part reference"));
        }
        let text = std::fs::read_to_string(&canon).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let doc: ObjectDocument = serde_json::from_str(&text).map_err(|e| match json_err(e) {
            Error::Parse { position, message } => Error::Parse { position: format!("{}:{position}", path.display()), message },
            other => other,
        })?;
        self.stack.push(canon.clone());
        let out = self.object(&doc, canon.parent());
        self.stack.pop();
        out
    }

    fn part(&mut self, doc: &ObjectDocument, base: Option<&Path>, key: &str, kind: ObjectKind) -> Result<Object> {
        let at = format!("parts.{key}");
        let part = doc.parts.get(key).ok_or_else(|| parse_err(&at, "missing part"))?;
        let obj = match part {
            Part::Inline(d) => self.object(d, base)?,
            Part::Path(p) => {
                let path = match base {
                    Some(b) => b.join(p),
                    None => PathBuf::from(p),
                };
                self.file(&path)?
            }
        };
        if obj.kind() != kind {
            return Err(parse_err(&at, format!("expected {kind:?}, found {:?}", obj.kind())));
        }
        Ok(obj)
    }

    fn object(&mut self, doc: &ObjectDocument, base: Option<&Path>) -> Result<Object> {
        if doc.schema_version != SCHEMA_VERSION {
            return Err(parse_err("schema_version", format!("unsupported version {}", doc.schema_version)));
        }
        let field: Field = doc.field.parse().map_err(|e| parse_err("field", format!("{e}")))?;
        let window = DegreeWindow::new(doc.window[0], doc.window[1]).map_err(|e| parse_err("window", e.to_string()))?;
        let shape = Shape { field, window };
        match doc.kind {
            ObjectKind::Complex => {
                let complex = shape.complex(doc)?;
                let trusted = doc.trusted.map(|[lo, hi]| TrustedRange::new(lo, hi));
                if let Some(r) = trusted {
                    if !r.within(&window) {
                        return Err(parse_err("trusted", format!("range [{lo}, {hi}] exceeds the window", lo = r.lo, hi = r.hi)));
                    }
                }
                Ok(Object::Complex { complex, trusted })
            }
            ObjectKind::Algebra => Ok(Object::Algebra(shape.algebra(doc)?)),
            ObjectKind::Coalgebra => Ok(Object::Coalgebra(shape.coalgebra(doc)?)),
            ObjectKind::Coring => Ok(Object::Coring(shape.coalgebra(doc)?)),
            ObjectKind::Bialgebra => Ok(Object::Bialgebra(shape.bialgebra(doc)?)),
            ObjectKind::ComoduleAlgebra => {
                let Object::Bialgebra(h) = self.part(doc, base, "h", ObjectKind::Bialgebra)? else { unreachable!() };
                shape.same_field(h.field(), "parts.h")?;
                Ok(Object::ComodAlgebra(shape.comod_algebra(doc, &h)?))
            }
            ObjectKind::ExtensionProblem => {
                let Object::ComodAlgebra(a) = self.part(doc, base, "source", ObjectKind::ComoduleAlgebra)? else { unreachable!() };
                let Object::ComodAlgebra(b) = self.part(doc, base, "target", ObjectKind::ComoduleAlgebra)? else { unreachable!() };
                shape.same_field(a.alg.field(), "parts.source")?;
                shape.same_field(b.alg.field(), "parts.target")?;
                Ok(Object::Extension(shape.extension(doc, &a, &b)?))
            }
        }
    }
}

struct Shape {
    field: Field,
    window: DegreeWindow,
}

/// Position and output terms of one map entry.
type Row<'a> = (usize, &'a [(Coef, Vec<String>)]);
/// Rows of one map keyed by their input words.
type Rows<'a> = HashMap<&'a [String], Row<'a>>;

impl Shape {
    fn same_field(&self, f: Field, at: &str) -> Result<()> {
        if f != self.field {
            return Err(parse_err(at, format!("field {f} does not match {}", self.field)));
        }
        Ok(())
    }

    fn scalar(&self, c: &Coef, at: &str) -> Result<Scalar> {
        let text = match c {
            Coef::Residue(v) => v.to_string(),
            Coef::Rational(s) => s.clone(),
        };
        self.field.parse(&text).map_err(|e| parse_err(at, e.to_string()))
    }

    fn space(&self, doc: &ObjectDocument) -> Result<GradedSpace> {
        let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut seen = HashMap::new();
        for (k, g) in doc.generators.iter().enumerate() {
            for l in &g.labels {
                if seen.insert(l.clone(), g.degree).is_some() {
                    return Err(parse_err(&format!("generators[{k}]"), format!("duplicate label {l:?}")));
                }
            }
            basis.entry(g.degree).or_default().extend(g.labels.iter().cloned());
        }
        GradedSpace::new(self.field, self.window, basis).map_err(|e| parse_err("generators", e.to_string()))
    }

    fn rows<'a>(&self, doc: &'a ObjectDocument, key: &str) -> Result<Rows<'a>> {
        let mut out = HashMap::new();
        for (k, e) in doc.maps.get(key).map(Vec::as_slice).unwrap_or_default().iter().enumerate() {
            if out.insert(e.input.as_slice(), (k, e.output.as_slice())).is_some() {
                return Err(parse_err(&format!("maps.{key}[{k}]"), "repeated input"));
            }
        }
        Ok(out)
    }

    fn cell(&self, space: &GradedSpace, label: &str, at: &str) -> Result<Cell> {
        space.find(label).ok_or_else(|| parse_err(at, format!("unknown label {label:?}")))
    }

    /// Checks every input word of `key` names basis elements of `factors`.
    fn check_inputs(&self, doc: &ObjectDocument, key: &str, factors: &[&GradedSpace]) -> Result<()> {
        for (k, e) in doc.maps.get(key).map(Vec::as_slice).unwrap_or_default().iter().enumerate() {
            let at = format!("maps.{key}[{k}].in");
            if e.input.len() != factors.len() {
                return Err(parse_err(&at, format!("expected {} labels", factors.len())));
            }
            for (l, s) in e.input.iter().zip(factors) {
                self.cell(s, l, &at)?;
            }
        }
        Ok(())
    }

    /// Output terms of a row as scalars and cells of `factors`.
    fn terms(&self, key: &str, row: Option<&Row>, factors: &[&GradedSpace]) -> Result<Vec<(Scalar, Vec<Cell>)>> {
        let Some((k, out)) = row else { return Ok(Vec::new()) };
        let at = format!("maps.{key}[{k}].out");
        let mut terms = Vec::new();
        for (c, word) in out.iter() {
            if word.len() != factors.len() {
                return Err(parse_err(&at, format!("expected words of {} labels", factors.len())));
            }
            let cells = word.iter().zip(factors).map(|(l, s)| self.cell(s, l, &at)).collect::<Result<Vec<_>>>()?;
            terms.push((self.scalar(c, &at)?, cells));
        }
        Ok(terms)
    }

    /// A vector in `space` of the given degree; terms of other degrees are rejected.
    fn vector(&self, key: &str, row: Option<&Row>, space: &GradedSpace, deg: i64) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (s, cells) in self.terms(key, row, &[space])? {
            if cells[0].0 != deg {
                return Err(parse_err(&format!("maps.{key}"), format!("term of degree {} where {deg} was expected", cells[0].0)));
            }
            v.add_at(cells[0].1, &s);
        }
        Ok(v)
    }

    fn scalar_value(&self, key: &str, row: Option<&Row>) -> Result<Scalar> {
        let mut s = self.field.zero();
        for (c, _) in self.terms(key, row, &[])? {
            s = s.add(&c);
        }
        Ok(s)
    }

    fn complex(&self, doc: &ObjectDocument) -> Result<ChainComplex> {
        if doc.generators.is_empty() && doc.maps.is_empty() && doc.kind != ObjectKind::Complex {
            return Ok(ChainComplex::ground(self.field, self.window));
        }
        let space = self.space(doc)?;
        let rows = self.rows(doc, "d")?;
        self.check_inputs(doc, "d", &[&space])?;
        let mut images = HashMap::new();
        for (d, i) in space.elements() {
            let key = [space.label(d, i).to_string()];
            if let Some(row) = rows.get(key.as_slice()) {
                images.insert((d, i), self.vector("d", Some(row), &space, d - 1)?);
            }
        }
        ChainComplex::from_fn(space, |d, i| images.remove(&(d, i)).unwrap_or_default())
    }

    fn algebra(&self, doc: &ObjectDocument) -> Result<DGAlgebra> {
        if doc.generators.is_empty() && doc.maps.is_empty() {
            return Ok(DGAlgebra::ground(self.field, self.window));
        }
        let complex = self.complex(doc)?;
        self.algebra_on(doc, &complex)
    }

    fn algebra_on(&self, doc: &ObjectDocument, complex: &ChainComplex) -> Result<DGAlgebra> {
        let space = complex.space();
        let mu = self.rows(doc, "mu")?;
        self.check_inputs(doc, "mu", &[space, space])?;
        let mut table = HashMap::new();
        for a in space.elements() {
            for b in space.elements() {
                let key = [space.label(a.0, a.1).to_string(), space.label(b.0, b.1).to_string()];
                if let Some(row) = mu.get(key.as_slice()) {
                    table.insert((a, b), self.vector("mu", Some(row), space, a.0 + b.0)?);
                }
            }
        }
        let unit = self.rows(doc, "unit")?;
        self.check_inputs(doc, "unit", &[])?;
        let unit = self.vector("unit", unit.get([].as_slice()), space, 0)?;
        let aug = match doc.maps.get("augmentation") {
            None => None,
            Some(_) => {
                let rows = self.rows(doc, "augmentation")?;
                self.check_inputs(doc, "augmentation", &[space])?;
                let mut values = HashMap::new();
                for (d, i) in space.elements() {
                    let key = [space.label(d, i).to_string()];
                    values.insert((d, i), self.scalar_value("augmentation", rows.get(key.as_slice()))?);
                }
                Some(values)
            }
        };
        let field = self.field;
        let eps = aug.map(|values| move |c: Cell| values.get(&c).cloned().unwrap_or_else(|| field.zero()));
        DGAlgebra::new(complex, |a, b| table.get(&(a, b)).cloned().unwrap_or_default(), unit, eps.as_ref().map(|f| f as &dyn Fn(Cell) -> Scalar))
    }

    fn coalgebra(&self, doc: &ObjectDocument) -> Result<DGCoalgebra> {
        if doc.generators.is_empty() && doc.maps.is_empty() {
            return Ok(DGCoalgebra::ground(self.field, self.window));
        }
        let complex = self.complex(doc)?;
        self.coalgebra_on(doc, &complex)
    }

    fn coalgebra_on(&self, doc: &ObjectDocument, complex: &ChainComplex) -> Result<DGCoalgebra> {
        let space = complex.space();
        let delta = self.rows(doc, "delta")?;
        self.check_inputs(doc, "delta", &[space])?;
        let counit = self.rows(doc, "counit")?;
        self.check_inputs(doc, "counit", &[space])?;
        let mut terms: HashMap<Cell, Vec<Term>> = HashMap::new();
        let mut eps = HashMap::new();
        for c in space.elements() {
            let key = [space.label(c.0, c.1).to_string()];
            let mut t = Vec::new();
            for (s, cells) in self.terms("delta", delta.get(key.as_slice()), &[space, space])? {
                if cells[0].0 + cells[1].0 != c.0 {
                    return Err(parse_err("maps.delta", format!("term of degree {} in the image of {:?}", cells[0].0 + cells[1].0, key[0])));
                }
                t.push((s, cells[0], cells[1]));
            }
            terms.insert(c, t);
            eps.insert(c, self.scalar_value("counit", counit.get(key.as_slice()))?);
        }
        let coaug = match doc.maps.get("coaugmentation") {
            None => None,
            Some(_) => {
                let rows = self.rows(doc, "coaugmentation")?;
                self.check_inputs(doc, "coaugmentation", &[])?;
                Some(self.vector("coaugmentation", rows.get([].as_slice()), space, 0)?)
            }
        };
        let field = self.field;
        DGCoalgebra::new(
            complex,
            |c| terms.remove(&c).unwrap_or_default(),
            |c| eps.get(&c).cloned().unwrap_or_else(|| field.zero()),
            coaug,
        )
    }

    fn bialgebra(&self, doc: &ObjectDocument) -> Result<DGBialgebra> {
        if doc.generators.is_empty() && doc.maps.is_empty() {
            return Ok(DGBialgebra::ground(self.field, self.window));
        }
        let complex = self.complex(doc)?;
        let alg = self.algebra_on(doc, &complex)?;
        let coalg = self.coalgebra_on(doc, &complex)?;
        DGBialgebra::new(alg, coalg)
    }

    fn comod_algebra(&self, doc: &ObjectDocument, h: &DGBialgebra) -> Result<ComodAlgebra> {
        let alg = self.algebra(doc)?;
        let space = alg.complex.space().clone();
        let hs = h.complex().space().clone();
        let rows = self.rows(doc, "rho")?;
        self.check_inputs(doc, "rho", &[&space])?;
        let mut images = HashMap::new();
        for c in space.elements() {
            let key = [space.label(c.0, c.1).to_string()];
            images.insert(c, self.terms("rho", rows.get(key.as_slice()), &[&space, &hs])?);
        }
        let mut bad = None;
        let out = ComodAlgebra::new(h, &alg, |c, t: &Tensor| {
            let mut v = SparseVec::new();
            for (s, cells) in images.remove(&c).unwrap_or_default() {
                match t.layout.index(&cells) {
                    Some((n, j)) if n == c.0 => v.add_at(j, &s),
                    _ => bad = Some(c),
                }
            }
            v
        });
        if let Some(c) = bad {
            return Err(parse_err("maps.rho", format!("term outside A ⊗ H in the image of {:?}", space.label(c.0, c.1))));
        }
        out
    }

    fn map(&self, doc: &ObjectDocument, key: &str, source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
        let (s, t) = (source.space(), target.space());
        let rows = self.rows(doc, key)?;
        self.check_inputs(doc, key, &[s])?;
        let mut images = HashMap::new();
        for c in s.elements() {
            let label = [s.label(c.0, c.1).to_string()];
            images.insert(c, self.vector(key, rows.get(label.as_slice()), t, c.0)?);
        }
        ChainMap::linear_from_fn(source, target, 0, |d, i| images.remove(&(d, i)).unwrap_or_default())
    }

    fn extension(&self, doc: &ObjectDocument, a: &ComodAlgebra, b: &ComodAlgebra) -> Result<ExtensionProblem> {
        let gamma = BialgebraMap::new(&a.h, &b.h, self.map(doc, "gamma", a.h.complex(), b.h.complex())?)?;
        let phi = AlgebraMap::new(&a.alg, &b.alg, self.map(doc, "phi", &a.alg.complex, &b.alg.complex)?)?;
        let morphism = ComodAlgMorphism::new(&gamma, a, b, &phi)?;
        let wit = doc.witnesses.clone().unwrap_or_default();
        let name = wit.name.as_deref().unwrap_or("extension problem");
        let mut p = ExtensionProblem::new(name, morphism, self.window)?;
        if let Some(stages) = &wit.filtration {
            let space = b.alg.complex.space();
            let mut out = Vec::new();
            for (k, stage) in stages.iter().enumerate() {
                let mut gens = Vec::new();
                for (j, g) in stage.iter().enumerate() {
                    let at = format!("witnesses.filtration[{k}][{j}]");
                    let mut v = SparseVec::new();
                    for (c, l) in &g.vector {
                        let cell = self.cell(space, l, &at)?;
                        if cell.0 != g.degree {
                            return Err(parse_err(&at, format!("{l:?} is not in degree {}", g.degree)));
                        }
                        v.add_at(cell.1, &self.scalar(c, &at)?);
                    }
                    gens.push((g.degree, v));
                }
                out.push(gens);
            }
            p = p.with_filtration(FiltrationWitness { stages: out });
        }
        if doc.maps.contains_key("retract") {
            p = p.with_retract(self.map(doc, "retract", &b.alg.complex, &a.alg.complex)?)?;
        }
        p.coring_filtration = match wit.coring_filtration.as_deref() {
            None | Some("missing") => CoringFiltration::Missing,
            Some("canonical") => CoringFiltration::Canonical,
            Some(other) => return Err(parse_err("witnesses.coring_filtration", format!("unknown value {other:?}"))),
        };
        p.fibrant = wit.fibrant;
        for key in doc.maps.keys() {
            if !["gamma", "phi", "retract"].contains(&key.as_str()) {
                return Err(parse_err(&format!("maps.{key}"), "not a map of an extension problem"));
            }
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------- saving

fn coef(s: &Scalar) -> Coef {
    match s {
        Scalar::Mod(v, _) => Coef::Residue(*v),
        Scalar::Rat(_) => Coef::Rational(s.to_string()),
    }
}

fn header(kind: ObjectKind, field: Field, w: DegreeWindow) -> ObjectDocument {
    ObjectDocument {
        schema_version: SCHEMA_VERSION,
        kind,
        field: field.to_string(),
        window: [w.lo, w.hi],
        trusted: None,
        generators: Vec::new(),
        maps: BTreeMap::new(),
        parts: BTreeMap::new(),
        witnesses: None,
    }
}

fn vec_out(space: &GradedSpace, deg: i64, v: &SparseVec) -> Vec<(Coef, Vec<String>)> {
    v.iter().map(|(i, s)| (coef(s), vec![space.label(deg, i).to_string()])).collect()
}

fn complex_into(doc: &mut ObjectDocument, x: &ChainComplex) {
    let space = x.space();
    doc.generators = space.basis().iter().map(|(d, ls)| Generator { degree: *d, labels: ls.clone() }).collect();
    let mut d = Vec::new();
    for (n, i) in space.elements() {
        let v = x.apply_d(n, &SparseVec::unit(i, x.field()));
        if !v.is_zero() {
            d.push(Entry { input: vec![space.label(n, i).into()], output: vec_out(space, n - 1, &v) });
        }
    }
    if !d.is_empty() {
        doc.maps.insert("d".into(), d);
    }
}

fn algebra_into(doc: &mut ObjectDocument, a: &DGAlgebra) {
    let space = a.complex.space();
    let w = a.window();
    let mut mu = Vec::new();
    for x in space.elements() {
        for y in space.elements() {
            if !w.contains(x.0 + y.0) {
                continue;
            }
            let v = a.mul_cells(x, y);
            if !v.is_zero() {
                mu.push(Entry {
                    input: vec![space.label(x.0, x.1).into(), space.label(y.0, y.1).into()],
                    output: vec_out(space, x.0 + y.0, &v),
                });
            }
        }
    }
    doc.maps.insert("mu".into(), mu);
    doc.maps.insert("unit".into(), vec![Entry { input: vec![], output: vec_out(space, 0, &a.one()) }]);
    if a.augmentation.is_some() {
        let rows = space
            .elements()
            .into_iter()
            .filter(|c| c.0 == 0)
            .filter_map(|(n, i)| {
                let s = a.augment(n, &SparseVec::unit(i, a.field()));
                (!s.is_zero()).then(|| Entry { input: vec![space.label(n, i).into()], output: vec![(coef(&s), vec![])] })
            })
            .collect();
        doc.maps.insert("augmentation".into(), rows);
    }
}

fn coalgebra_into(doc: &mut ObjectDocument, c: &DGCoalgebra) {
    let space = c.complex.space();
    let mut delta = Vec::new();
    let mut counit = Vec::new();
    for x in space.elements() {
        let label = space.label(x.0, x.1).to_string();
        let terms: Vec<_> = c
            .delta_terms(x)
            .into_iter()
            .map(|(s, a, b)| (coef(&s), vec![space.label(a.0, a.1).into(), space.label(b.0, b.1).into()]))
            .collect();
        if !terms.is_empty() {
            delta.push(Entry { input: vec![label.clone()], output: terms });
        }
        let e = c.counit(x);
        if !e.is_zero() {
            counit.push(Entry { input: vec![label], output: vec![(coef(&e), vec![])] });
        }
    }
    doc.maps.insert("delta".into(), delta);
    doc.maps.insert("counit".into(), counit);
    if let Some(u) = c.unit() {
        doc.maps.insert("coaugmentation".into(), vec![Entry { input: vec![], output: vec_out(space, 0, &u) }]);
    }
}

fn map_entries(f: &ChainMap) -> Vec<Entry> {
    let (s, t) = (f.source.space(), f.target.space());
    s.elements()
        .into_iter()
        .filter_map(|(n, i)| {
            let v = f.image_of(n, i);
            (!v.is_zero()).then(|| Entry { input: vec![s.label(n, i).into()], output: vec_out(t, n + f.degree, &v) })
        })
        .collect()
}

/// The canonical document of an object; sub-objects are inlined.
pub fn to_document(obj: &Object) -> ObjectDocument {
    match obj {
        Object::Complex { complex, trusted } => {
            let mut doc = header(ObjectKind::Complex, complex.field(), complex.window());
            complex_into(&mut doc, complex);
            doc.trusted = trusted.map(|r| [r.lo, r.hi]);
            doc
        }
        Object::Algebra(a) => {
            let mut doc = header(ObjectKind::Algebra, a.field(), a.window());
            complex_into(&mut doc, &a.complex);
            algebra_into(&mut doc, a);
            doc
        }
        Object::Coalgebra(c) | Object::Coring(c) => {
            let mut doc = header(obj.kind(), c.field(), c.window());
            complex_into(&mut doc, &c.complex);
            coalgebra_into(&mut doc, c);
            doc
        }
        Object::Bialgebra(h) => {
            let mut doc = header(ObjectKind::Bialgebra, h.field(), h.window());
            complex_into(&mut doc, h.complex());
            algebra_into(&mut doc, &h.alg);
            coalgebra_into(&mut doc, &h.coalg);
            doc
        }
        Object::ComodAlgebra(m) => {
            let mut doc = header(ObjectKind::ComoduleAlgebra, m.alg.field(), m.alg.window());
            complex_into(&mut doc, &m.alg.complex);
            algebra_into(&mut doc, &m.alg);
            let (s, hs) = (m.alg.complex.space(), m.h.complex().space());
            let mut rho = Vec::new();
            for c in s.elements() {
                let terms: Vec<_> = m
                    .coaction_terms(c)
                    .into_iter()
                    .map(|(x, a, h)| (coef(&x), vec![s.label(a.0, a.1).into(), hs.label(h.0, h.1).into()]))
                    .collect();
                if !terms.is_empty() {
                    rho.push(Entry { input: vec![s.label(c.0, c.1).into()], output: terms });
                }
            }
            doc.maps.insert("rho".into(), rho);
            doc.parts.insert("h".into(), Part::Inline(Box::new(to_document(&Object::Bialgebra(m.h.clone())))));
            doc
        }
        Object::Extension(p) => {
            let m = &p.morphism;
            let mut doc = header(ObjectKind::ExtensionProblem, m.source.alg.field(), p.window);
            doc.parts.insert("source".into(), Part::Inline(Box::new(to_document(&Object::ComodAlgebra(m.source.clone())))));
            doc.parts.insert("target".into(), Part::Inline(Box::new(to_document(&Object::ComodAlgebra(m.target.clone())))));
            doc.maps.insert("gamma".into(), map_entries(&m.gamma.map));
            doc.maps.insert("phi".into(), map_entries(&m.phi.map));
            if let Some(r) = &p.retract {
                doc.maps.insert("retract".into(), map_entries(r));
            }
            let space = m.target.alg.complex.space();
            let filtration = p.filtration.as_ref().map(|f| {
                f.stages
                    .iter()
                    .map(|stage| {
                        stage
                            .iter()
                            .map(|(d, v)| StageGenerator {
                                degree: *d,
                                vector: v.iter().map(|(i, s)| (coef(s), space.label(*d, i).to_string())).collect(),
                            })
                            .collect()
                    })
                    .collect()
            });
            let coring_filtration = match p.coring_filtration {
                CoringFiltration::Canonical => Some("canonical".to_string()),
                _ => None,
            };
            doc.witnesses = Some(WitnessBlock { name: Some(p.name.clone()), filtration, coring_filtration, fibrant: p.fibrant });
            doc
        }
    }
}

/// Canonical pretty JSON with a trailing newline.
pub fn save(obj: &Object) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(obj)).expect("documents serialize");
    s.push('\n');
    s
}
