use std::path::Path;

use hgx_core::chain::{homology_dims, ChainComplex, DegreeWindow, TrustedRange};
use hgx_core::cobar::{bar, cobar, hco, Coaction};
use hgx_core::comodule::Side;
use hgx_core::constructors::{cof, desc, galois};
use hgx_core::dg::{catalog, DGAlgebra, DGCoalgebra, DGObject};
use hgx_core::io::{load_path, save, to_document, verdict_json, verdict_text, Object};
use hgx_core::linalg::Field;
use hgx_core::verdict::{
    check_classical_hg, check_descent_hypotheses, check_homotopic_hg, koszul_report, problem_catalog, ExtensionProblem,
    Outcome, Verdict,
};
use hgx_core::Error;
use serde_json::{json, Value};

use crate::{CheckKind, Cli, Command, Range};

pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const INPUT: u8 = 2;
pub const UNSUPPORTED: u8 = 3;

/// What a command hands back to `main`: the report payload, the text form
/// and the exit code.
pub struct Output {
    pub command: String,
    pub input: Vec<u8>,
    pub payload: Value,
    pub text: String,
    pub code: u8,
    pub error: Option<String>,
}

struct Ctx {
    field: Option<Field>,
    window: Option<Range>,
    input: Vec<u8>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedGamma(_) | Error::IncompleteEvidence(_) => UNSUPPORTED,
        _ => INPUT,
    }
}

fn input_err(msg: impl Into<String>) -> Error {
    Error::Parse { position: "input".into(), message: msg.into() }
}

fn range_json(r: TrustedRange) -> Value {
    json!([r.lo, r.hi])
}

fn dims_json(x: &ChainComplex) -> Value {
    Value::Array(x.window().degrees().filter(|&d| x.dim(d) > 0).map(|d| json!([d, x.dim(d)])).collect())
}

fn dims_text(x: &ChainComplex) -> String {
    let parts: Vec<String> = x.window().degrees().filter(|&d| x.dim(d) > 0).map(|d| format!("{d}:{}", x.dim(d))).collect();
    parts.join(" ")
}

impl Ctx {
    fn window(&self) -> Result<Option<DegreeWindow>, Error> {
        self.window.map(|r| DegreeWindow::new(r.lo, r.hi)).transpose()
    }

    fn load(&mut self, path: &Path) -> Result<Object, Error> {
        let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.input.extend_from_slice(&bytes);
        let obj = load_path(path)?;
        if let Some(f) = self.field {
            let have = match &obj {
                Object::Extension(p) => p.morphism.source.alg.field(),
                o => o.complex().map(|c| c.field()).unwrap_or(f),
            };
            if have != f {
                return Err(input_err(format!("document is over {have}, but --field {f} was given")));
            }
        }
        Ok(obj)
    }

    fn extension(&mut self, path: &Path) -> Result<ExtensionProblem, Error> {
        match self.load(path)? {
            Object::Extension(p) => Ok(p),
            o => Err(input_err(format!("expected an extension-problem document, found {:?}", o.kind()))),
        }
    }
}

fn object_output(obj: &Object, extra: Value) -> (Value, String) {
    let doc = serde_json::to_value(to_document(obj)).expect("documents serialize");
    let mut payload = json!({ "object": doc });
    if let (Value::Object(p), Value::Object(e)) = (&mut payload, extra) {
        p.extend(e);
    }
    (payload, save(obj))
}

fn verdict_output(v: &Verdict) -> (Value, String, u8) {
    let code = match v.outcome {
        Outcome::Pass | Outcome::NotApplicable => PASS,
        Outcome::Fail => FAIL,
        Outcome::NotDecided => UNSUPPORTED,
    };
    (verdict_json(v), verdict_text(v), code)
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Verify { .. } => "verify".into(),
        Command::Homology { .. } => "homology".into(),
        Command::Desc { .. } => "desc".into(),
        Command::Hopf { .. } => "hopf".into(),
        Command::Cof { .. } => "cof".into(),
        Command::Galois { .. } => "galois".into(),
        Command::Cobar { left, right, .. } => format!("cobar --left {left} --right {right}"),
        Command::Bar { .. } => "bar".into(),
        Command::Hco { .. } => "hco".into(),
        Command::Check { kind, .. } => format!("check {}", format!("{kind:?}").to_lowercase()),
        Command::Catalog { name } => format!("catalog {}", name.as_deref().unwrap_or("")).trim_end().into(),
    }
}

pub fn run(cli: &Cli) -> Output {
    let mut ctx = Ctx { field: cli.field, window: cli.window, input: Vec::new() };
    let command = command_name(&cli.command);
    let result = dispatch(&mut ctx, &cli.command);
    match result {
        Ok((payload, text, code)) => Output { command, input: ctx.input, payload, text, code, error: None },
        Err((e, code)) => Output {
            command,
            input: ctx.input,
            payload: json!({ "error": e.to_string(), "exit_code": code }),
            text: String::new(),
            code,
            error: Some(e.to_string()),
        },
    }
}

type Res = Result<(Value, String, u8), (Error, u8)>;

fn tag<T>(r: Result<T, Error>) -> Result<T, (Error, u8)> {
    r.map_err(|e| {
        let c = exit_code(&e);
        (e, c)
    })
}

fn dispatch(ctx: &mut Ctx, cmd: &Command) -> Res {
    match cmd {
        Command::Verify { file } => match ctx.load(file) {
            Ok(obj) => {
                let kind = serde_json::to_value(obj.kind()).expect("kinds serialize");
                let (dims, text) = match obj.complex() {
                    Some(c) => (dims_json(c), format!("verified {} ({})\n", kind.as_str().unwrap_or(""), dims_text(c))),
                    None => (Value::Null, format!("verified {}\n", kind.as_str().unwrap_or(""))),
                };
                Ok((json!({ "kind": kind, "verified": true, "dims": dims }), text, PASS))
            }
            Err(e @ Error::Axiom { .. }) => Ok((json!({ "verified": false, "error": e.to_string() }), format!("FAIL: {e}\n"), FAIL)),
            Err(e) => Err(tag::<()>(Err(e)).unwrap_err()),
        },
        Command::Homology { file, range } => tag(homology(ctx, file, *range)),
        Command::Desc { file } => tag((|| {
            let p = ctx.extension(file)?;
            let d = desc(&p.morphism.phi)?;
            let c = &d.coring.bimodule.left.complex;
            Ok((
                json!({ "coring": "B ⊗_A B", "dims": dims_json(c), "coaugmented": d.coring.coaugmentation.is_some() }),
                format!("B ⊗_A B: {}\n", dims_text(c)),
                PASS,
            ))
        })()),
        Command::Hopf { file } => tag((|| {
            let p = ctx.extension(file)?;
            let g = galois(&p.morphism)?;
            let c = &g.hopf.coring.bimodule.left.complex;
            Ok((
                json!({ "coring": "B ⊗ Cof(Γ)", "dims": dims_json(c), "coaugmented": g.hopf.coring.coaugmentation.is_some() }),
                format!("B ⊗ Cof(Γ): {}\n", dims_text(c)),
                PASS,
            ))
        })()),
        Command::Cof { file } => tag((|| {
            let p = ctx.extension(file)?;
            let c = cof(&p.morphism.gamma)?;
            let x = &c.module.coalg.complex;
            let obj = Object::Coalgebra(c.module.coalg.clone());
            let (payload, text) = object_output(&obj, json!({ "dims": dims_json(x) }));
            Ok((payload, text, PASS))
        })()),
        Command::Galois { file } => tag((|| {
            let p = ctx.extension(file)?;
            let g = galois(&p.morphism)?;
            let ranks = g.ranks()?;
            let ok = g.invertible()?;
            let rows: Vec<Value> = ranks
                .iter()
                .map(|(d, r, s, t)| json!({ "degree": d, "rank": r, "source_dim": s, "target_dim": t }))
                .collect();
            let mut text = format!("Galois map {}\n", if ok { "is an isomorphism" } else { "is not an isomorphism" });
            for (d, r, s, t) in &ranks {
                if *s > 0 || *t > 0 {
                    text.push_str(&format!("  deg {d}: rank {r} of {s}x{t}\n"));
                }
            }
            Ok((json!({ "invertible": ok, "ranks": rows }), text, if ok { PASS } else { FAIL }))
        })()),
        Command::Cobar { file, left, right } => tag(cobar_cmd(ctx, file, left, right)),
        Command::Bar { file } => tag((|| {
            let a: DGAlgebra = match ctx.load(file)? {
                Object::Algebra(a) => a,
                Object::Bialgebra(h) => h.alg,
                o => return Err(input_err(format!("bar needs an algebra, found {:?}", o.kind()))),
            };
            let w = ctx.window()?.unwrap_or(a.window());
            let b = bar(&a, w)?;
            let (payload, text) = object_output(&Object::Coalgebra(b.coalgebra.clone()), json!({ "trusted": range_json(b.range) }));
            Ok((payload, text, PASS))
        })()),
        Command::Hco { file } => tag((|| {
            let ca = match ctx.load(file)? {
                Object::ComodAlgebra(a) => a,
                o => return Err(input_err(format!("hco needs a comodule algebra, found {:?}", o.kind()))),
            };
            let hw = ca.h.window();
            let aw = ca.alg.window();
            let w = match ctx.window()? {
                Some(w) => w,
                None => DegreeWindow::new(aw.lo, aw.hi.min(hw.hi - 1))?,
            };
            let m = hco(&ca, &ca.h, w)?;
            let (payload, text) =
                object_output(&Object::Algebra(m.algebra.clone()), json!({ "trusted": range_json(m.cobar.range) }));
            Ok((payload, text, PASS))
        })()),
        Command::Check { kind, file } => {
            let p = tag(ctx.extension(file))?;
            let v = match kind {
                CheckKind::Classical => check_classical_hg(&p),
                CheckKind::Homotopic => check_homotopic_hg(&p),
                CheckKind::Descent => check_descent_hypotheses(&p),
                CheckKind::Koszul => koszul_report(&p),
            };
            let v = tag(v)?;
            Ok(verdict_output(&v))
        }
        Command::Catalog { name } => tag(catalog_cmd(ctx, name.as_deref())),
    }
}

fn homology(ctx: &mut Ctx, file: &Path, range: Option<Range>) -> Result<(Value, String, u8), Error> {
    let obj = ctx.load(file)?;
    let (x, trusted) = match &obj {
        Object::Complex { complex, trusted } => (complex.clone(), trusted.unwrap_or(complex.window().trusted())),
        o => {
            let c = o.complex().ok_or_else(|| input_err("homology needs an object with one underlying complex"))?;
            (c.clone(), c.window().trusted())
        }
    };
    let r = match range {
        Some(r) => TrustedRange::new(r.lo, r.hi),
        None => trusted,
    };
    for d in [r.lo, r.hi] {
        if !trusted.contains(d) {
            return Err(Error::Truncation { degree: d, lo: trusted.lo, hi: trusted.hi });
        }
    }
    let dims = homology_dims(&x, r)?;
    let rows: Vec<Value> = dims.iter().map(|(d, n)| json!([d, n])).collect();
    let parts: Vec<String> = dims.iter().map(|(d, n)| format!("H{d} = {n}")).collect();
    Ok((json!({ "range": range_json(r), "dims": rows }), format!("{}\n", parts.join(", ")), PASS))
}

fn cobar_cmd(ctx: &mut Ctx, file: &Path, left: &str, right: &str) -> Result<(Value, String, u8), Error> {
    let c: DGCoalgebra = match ctx.load(file)? {
        Object::Coalgebra(c) | Object::Coring(c) => c,
        Object::Bialgebra(h) => h.coalg,
        o => return Err(input_err(format!("cobar needs a coalgebra, found {:?}", o.kind()))),
    };
    let m = match left {
        "ground" => Coaction::ground(&c, Side::Right)?,
        "regular" => Coaction::regular(&c, Side::Right),
        path => match ctx.load(Path::new(path))? {
            Object::ComodAlgebra(a) if a.h.complex() == &c.complex => Coaction::of_comod_algebra(&a),
            Object::ComodAlgebra(_) => return Err(Error::BaseMismatch("--left coacts through a different coalgebra".into())),
            o => return Err(input_err(format!("--left needs a comodule-algebra document, found {:?}", o.kind()))),
        },
    };
    let n = match right {
        "ground" => Coaction::ground(&c, Side::Left)?,
        "regular" => Coaction::regular(&c, Side::Left),
        other => return Err(input_err(format!("--right takes ground or regular, got {other:?}"))),
    };
    let cw = c.window();
    let w = match ctx.window()? {
        Some(w) => w,
        None => DegreeWindow::new(cw.lo, cw.hi - 1)?,
    };
    let x = cobar(&m, &c, &n, w)?;
    let obj = Object::Complex { complex: x.complex.clone(), trusted: Some(x.range) };
    let (payload, text) = object_output(&obj, json!({ "trusted": range_json(x.range) }));
    Ok((payload, text, PASS))
}

fn catalog_cmd(ctx: &mut Ctx, name: Option<&str>) -> Result<(Value, String, u8), Error> {
    let field = ctx.field.unwrap_or(Field::Rationals);
    let w = ctx.window()?.unwrap_or(DegreeWindow::new(0, 8)?);
    ctx.input.extend_from_slice(format!("{} {} {}", name.unwrap_or(""), field, w).as_bytes());
    let objects = catalog(field, w)?;
    let problems = || problem_catalog(field, w);
    let Some(name) = name else {
        let mut names: Vec<&str> = objects.iter().map(|(n, _)| *n).collect();
        names.extend(problems()?.iter().map(|(n, _)| *n));
        return Ok((json!({ "names": names }), names.iter().map(|n| format!("{n}\n")).collect(), PASS));
    };
    let obj = match objects.into_iter().find(|(n, _)| *n == name) {
        Some((_, DGObject::Complex(c))) => Object::Complex { complex: c, trusted: None },
        Some((_, DGObject::Algebra(a))) => Object::Algebra(a),
        Some((_, DGObject::Coalgebra(c))) => Object::Coalgebra(c),
        Some((_, DGObject::Bialgebra(h))) => Object::Bialgebra(h),
        None => match problems()?.into_iter().find(|(n, _)| *n == name) {
            Some((_, p)) => Object::Extension(p),
            None => return Err(input_err(format!("no fixture named {name:?}"))),
        },
    };
    let (payload, text) = object_output(&obj, json!({ "name": name }));
    Ok((payload, text, PASS))
}
