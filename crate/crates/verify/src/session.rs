//! Line-oriented session files: declarations followed by commands.

use std::collections::HashMap;
use std::fmt::Write as _;

use mfk_core::cosection::CosectionModel;
use mfk_core::koszul::{koszul_complex, SectionCosectionPair};
use mfk_core::module::{GradedFreeModule, Matrix, ModuleMap, PresentedModule};
use mfk_core::ring::{Ideal, MonomialOrder, PolyRing, Polynomial, Ring};
use mfk_core::two_periodic::TwoPeriodicComplex;
use mfk_core::Q;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SessionError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: unresolved name {name}")]
    Unresolved { line: usize, name: String },
    #[error("line {line}: {source}")]
    Core { line: usize, source: mfk_core::Error },
}

#[derive(Clone, Debug)]
pub enum Object {
    Ring(Ring),
    Ideal(Ideal<Q>),
    Module(PresentedModule<Q>),
    Coeff(PresentedModule<Q>),
    Map(ModuleMap<Q>),
    Complex(TwoPeriodicComplex<Q>),
    Pair(SectionCosectionPair<Q>, TwoPeriodicComplex<Q>),
    /// Model, total-space ring name, base ring name.
    Cosection(CosectionModel<Q>, String, String),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Ring(_) => "ring",
            Object::Ideal(_) => "ideal",
            Object::Module(_) => "module",
            Object::Coeff(_) => "coefficient module",
            Object::Map(_) => "map",
            Object::Complex(_) => "complex",
            Object::Pair(..) => "koszul pair",
            Object::Cosection(..) => "cosection model",
        }
    }
}

/// An ideal given by name or by generators.
#[derive(Clone, Debug)]
pub enum IdealRef {
    Named(String),
    Inline(Ideal<Q>),
}

#[derive(Clone, Debug)]
pub enum Check {
    Duality { pair: String },
    Additivity { source: String, target: String, f_plus: Matrix<Q>, f_minus: Matrix<Q>, with: String, support: IdealRef },
    Multiplicativity { first: String, second: String, with: String, inner: IdealRef, support: IdealRef },
    Pushforward { complex: String, ideal: IdealRef, with: String, support: IdealRef },
}

#[derive(Clone, Debug)]
pub enum Command {
    Gb { ideal: String },
    Homology { complex: String, with: Option<String> },
    Class { complex: String, with: String, support: IdealRef },
    Gysin { complex: String, param: String, support: IdealRef },
    Coslocal { model: String, with: String },
    Virtual { model: String, map: String, cone: String },
    Verify(Check),
}

#[derive(Clone, Debug)]
pub enum StatementKind {
    Declare(String),
    Tensor { name: String, left: String, right: String },
    Command(Command),
}

#[derive(Clone, Debug)]
pub struct Statement {
    pub line: usize,
    pub kind: StatementKind,
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    objects: HashMap<String, Object>,
    statements: Vec<Statement>,
}

impl Session {
    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.statements.iter().filter_map(|s| match &s.kind {
            StatementKind::Declare(n) | StatementKind::Tensor { name: n, .. } => Some(n.as_str()),
            StatementKind::Command(_) => None,
        })
    }

    /// Canonical text; parsing it yields an equal session.
    pub fn echo(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            let line = match &s.kind {
                StatementKind::Declare(name) => echo_object(name, &self.objects[name]),
                StatementKind::Tensor { name, left, right } => format!("tensor {name} = {left} {right}"),
                StatementKind::Command(c) => echo_command(c),
            };
            let _ = writeln!(out, "{line}");
        }
        out
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn echo_ring(name: &str, r: &Ring) -> String {
    let weights: Vec<String> = r.weights().iter().map(u32::to_string).collect();
    let mut s = format!("ring {name} vars {} weights {} order {}", r.names().join(","), weights.join(","), r.order().name());
    let params: Vec<&str> = (0..r.nvars()).filter(|&i| r.is_parameter(i)).map(|i| r.names()[i].as_str()).collect();
    if !params.is_empty() {
        let _ = write!(s, " params {}", params.join(","));
    }
    s
}

pub fn echo_module(m: &PresentedModule<Q>) -> String {
    if m.relations().is_empty() {
        m.ambient().to_string()
    } else {
        format!("{} rels {}", m.ambient(), m.presentation())
    }
}

fn echo_ideal(i: &Ideal<Q>) -> String {
    if i.gens().is_empty() {
        "0".into()
    } else {
        join(i.gens())
    }
}

fn echo_ref(r: &IdealRef) -> String {
    match r {
        IdealRef::Named(n) => n.clone(),
        IdealRef::Inline(i) => echo_ideal(i),
    }
}

fn echo_base(base: &Ideal<Q>) -> String {
    if base.gens().is_empty() {
        String::new()
    } else {
        format!(" base {}", echo_ideal(base))
    }
}

pub fn echo_complex(name: &str, e: &TwoPeriodicComplex<Q>) -> String {
    format!("twoper {name} plus {} minus {} dplus {} dminus {}{}", e.plus(), e.minus(), e.d_plus(), e.d_minus(), echo_base(e.base()))
}

fn echo_object(name: &str, o: &Object) -> String {
    match o {
        Object::Ring(r) => echo_ring(name, r),
        Object::Ideal(i) => format!("ideal {name} gens {}", echo_ideal(i)),
        Object::Module(m) => format!("module {name} {}", echo_module(m)),
        Object::Coeff(m) => format!("coeff {name} {}", echo_module(m)),
        Object::Map(f) => format!("map {name} from {} to {} matrix {} degree {}", f.source(), f.target(), f.matrix(), f.degree()),
        Object::Complex(e) => echo_complex(name, e),
        Object::Pair(p, _) => {
            let mut s = format!("koszul {name} bundle {}", p.bundle());
            if p.bundle().rank() > 0 {
                let _ = write!(s, " alpha {} beta {}", join(p.alpha()), join(p.beta()));
            }
            s + &echo_base(p.base())
        }
        Object::Cosection(m, ring, base) => {
            let mut s = format!("cosection {name} base {base} ring {ring} fiber {}", m.fiber());
            if m.fiber().rank() > 0 {
                let _ = write!(s, " sigma {}", join(m.sigma()));
            }
            s
        }
    }
}

fn echo_command(c: &Command) -> String {
    match c {
        Command::Gb { ideal } => format!("gb {ideal}"),
        Command::Homology { complex, with: None } => format!("homology {complex}"),
        Command::Homology { complex, with: Some(g) } => format!("homology {complex} with {g}"),
        Command::Class { complex, with, support } => format!("class {complex} with {with} support {}", echo_ref(support)),
        Command::Gysin { complex, param, support } => format!("gysin {complex} param {param} support {}", echo_ref(support)),
        Command::Coslocal { model, with } => format!("coslocal {model} with {with}"),
        Command::Virtual { model, map, cone } => format!("virtual {model} map {map} cone {cone}"),
        Command::Verify(Check::Duality { pair }) => format!("verify duality {pair}"),
        Command::Verify(Check::Additivity { source, target, f_plus, f_minus, with, support }) => format!(
            "verify additivity {source} {target} fplus {f_plus} fminus {f_minus} with {with} support {}",
            echo_ref(support)
        ),
        Command::Verify(Check::Multiplicativity { first, second, with, inner, support }) => format!(
            "verify multiplicativity {first} {second} with {with} inner {} support {}",
            echo_ref(inner),
            echo_ref(support)
        ),
        Command::Verify(Check::Pushforward { complex, ideal, with, support }) => {
            format!("verify pushforward {complex} ideal {} with {with} support {}", echo_ref(ideal), echo_ref(support))
        }
    }
}

/// A piece of a line with its 1-based starting column.
#[derive(Clone, Copy, Debug)]
struct Span<'a> {
    text: &'a str,
    column: usize,
}

impl<'a> Span<'a> {
    fn trim(self) -> Self {
        let lead = self.text.len() - self.text.trim_start().len();
        Span { text: self.text.trim(), column: self.column + lead }
    }
}

/// Whitespace-separated words at bracket depth zero.
fn words(s: Span<'_>) -> Vec<Span<'_>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = None;
    for (i, c) in s.text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(b) = start.take() {
                out.push(Span { text: &s.text[b..i], column: s.column + b });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push(Span { text: &s.text[b..], column: s.column + b });
    }
    out
}

/// Splits `s` at the given keywords; returns the leading text and each
/// keyword's argument.
fn clauses<'a>(line: usize, s: Span<'a>, keys: &[&str]) -> Result<(Span<'a>, HashMap<&'static str, Span<'a>>), SessionError> {
    let ws = words(s);
    let mut marks: Vec<(usize, &'static str, Span<'a>)> = Vec::new();
    for (k, w) in ws.iter().enumerate() {
        if let Some(key) = KEYWORDS.iter().find(|kw| **kw == w.text && keys.contains(kw)) {
            if marks.iter().any(|m| m.1 == *key) {
                return Err(syntax(line, w.column, format!("duplicate clause {key}")));
            }
            marks.push((k, key, *w));
        }
    }
    let end_of = |k: usize| -> usize { ws.get(k).map_or(s.text.len(), |w| w.column - s.column) };
    let head_end = marks.first().map_or(s.text.len(), |m| m.2.column - s.column);
    let head = Span { text: &s.text[..head_end], column: s.column }.trim();
    let mut out = HashMap::new();
    for (n, (_, key, w)) in marks.iter().enumerate() {
        let from = w.column - s.column + w.text.len();
        let to = marks.get(n + 1).map_or(s.text.len(), |m| end_of(m.0));
        out.insert(*key, Span { text: &s.text[from..to], column: s.column + from }.trim());
    }
    Ok((head, out))
}

const KEYWORDS: &[&str] = &[
    "vars", "weights", "order", "params", "gens", "rels", "from", "to", "matrix", "degree", "plus", "minus", "dplus", "dminus", "base",
    "bundle", "alpha", "beta", "ring", "fiber", "sigma", "of", "with", "support", "param", "map", "cone", "fplus", "fminus", "inner",
    "ideal", "F", "coeff",
];

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SessionError {
    SessionError::Syntax { line, column, message: message.into() }
}

fn core(line: usize, at: Span<'_>) -> impl Fn(mfk_core::Error) -> SessionError + '_ {
    move |e| match e {
        mfk_core::Error::Parse { column, message } => syntax(line, at.column + column - 1, message),
        other => SessionError::Core { line, source: other },
    }
}

struct Parser {
    session: Session,
    current: Option<(String, Ring)>,
    order: Option<MonomialOrder>,
}

/// Parses a session; `order` overrides every declared monomial order.
pub fn parse_session(text: &str, order: Option<MonomialOrder>) -> Result<Session, SessionError> {
    let mut p = Parser { session: Session::default(), current: None, order };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let s = Span { text: body, column: 1 }.trim();
        if s.text.is_empty() {
            continue;
        }
        p.statement(line, s)?;
    }
    Ok(p.session)
}

impl Parser {
    fn ring(&self, line: usize, at: Span<'_>) -> Result<Ring, SessionError> {
        self.current.as_ref().map(|c| c.1.clone()).ok_or_else(|| syntax(line, at.column, "no ring declared yet"))
    }

    fn declare(&mut self, line: usize, at: Span<'_>, name: &str, object: Object) -> Result<(), SessionError> {
        if !valid_name(name) {
            return Err(syntax(line, at.column, format!("bad name {name:?}")));
        }
        if self.session.objects.contains_key(name) {
            return Err(syntax(line, at.column, format!("{name} is already declared")));
        }
        self.session.objects.insert(name.to_string(), object);
        self.session.statements.push(Statement { line, kind: StatementKind::Declare(name.to_string()) });
        Ok(())
    }

    fn lookup(&self, line: usize, name: Span<'_>) -> Result<&Object, SessionError> {
        self.session.objects.get(name.text).ok_or_else(|| SessionError::Unresolved { line, name: name.text.to_string() })
    }

    fn expect<'b, T>(&'b self, line: usize, name: Span<'_>, what: &str, pick: impl Fn(&'b Object) -> Option<T>) -> Result<T, SessionError> {
        let o = self.lookup(line, name)?;
        pick(o).ok_or_else(|| syntax(line, name.column, format!("{} is a {}, expected {what}", name.text, o.kind())))
    }

    fn complex(&self, line: usize, name: Span<'_>) -> Result<TwoPeriodicComplex<Q>, SessionError> {
        self.expect(line, name, "a complex", |o| match o {
            Object::Complex(e) | Object::Pair(_, e) => Some(e.clone()),
            _ => None,
        })
    }

    fn module(&self, line: usize, name: Span<'_>) -> Result<PresentedModule<Q>, SessionError> {
        self.expect(line, name, "a module", |o| match o {
            Object::Module(m) | Object::Coeff(m) => Some(m.clone()),
            _ => None,
        })
    }

    fn ideal_ref(&self, line: usize, s: Span<'_>, ring: &Ring) -> Result<IdealRef, SessionError> {
        if let Some(Object::Ideal(_)) = self.session.objects.get(s.text) {
            return Ok(IdealRef::Named(s.text.to_string()));
        }
        Ok(IdealRef::Inline(parse_ideal(line, s, ring)?))
    }

    fn required<'a>(&self, line: usize, at: Span<'a>, c: &HashMap<&'static str, Span<'a>>, key: &str) -> Result<Span<'a>, SessionError> {
        c.get(key).copied().ok_or_else(|| syntax(line, at.column, format!("missing clause {key}")))
    }

    fn single<'a>(&self, line: usize, at: Span<'a>, what: &str) -> Result<Span<'a>, SessionError> {
        let ws = words(at);
        match ws.as_slice() {
            [w] => Ok(*w),
            [] => Err(syntax(line, at.column, format!("expected {what}"))),
            [_, extra, ..] => Err(syntax(line, extra.column, format!("unexpected text after {what}"))),
        }
    }

    fn statement(&mut self, line: usize, s: Span<'_>) -> Result<(), SessionError> {
        let ws = words(s);
        let keyword = ws[0];
        let rest = Span { text: &s.text[keyword.text.len()..], column: s.column + keyword.text.len() }.trim();
        match keyword.text {
            "ring" => self.ring_statement(line, rest),
            "ideal" => {
                let (head, c) = clauses(line, rest, &["gens"])?;
                let name = self.single(line, head, "a name")?;
                let ring = self.ring(line, s)?;
                let ideal = parse_ideal(line, self.required(line, rest, &c, "gens")?, &ring)?;
                self.declare(line, name, name.text, Object::Ideal(ideal))
            }
            "module" | "coeff" => {
                let (head, c) = clauses(line, rest, &["rels", "of"])?;
                let ws = words(head);
                let name = *ws.first().ok_or_else(|| syntax(line, rest.column, "expected a name"))?;
                let ring = self.ring(line, s)?;
                let m = if let Some(of) = c.get("of") {
                    if ws.len() > 1 {
                        return Err(syntax(line, ws[1].column, "unexpected text before of"));
                    }
                    match self.session.objects.get(of.text) {
                        Some(Object::Ideal(i)) => PresentedModule::quotient(i),
                        Some(Object::Module(m) | Object::Coeff(m)) => m.clone(),
                        Some(o) => return Err(syntax(line, of.column, format!("{} is a {}", of.text, o.kind()))),
                        None => PresentedModule::quotient(&parse_ideal(line, *of, &ring)?),
                    }
                } else {
                    let free_text = Span { text: &head.text[name.text.len()..], column: head.column + name.text.len() }.trim();
                    let free = parse_free(line, free_text, &ring)?;
                    match c.get("rels") {
                        None => PresentedModule::free(&free),
                        Some(r) => {
                            let m = parse_matrix(line, *r, &ring, 0)?;
                            if m.rows() != free.rank() && m.cols() > 0 {
                                return Err(syntax(line, r.column, format!("relations have {} rows for rank {}", m.rows(), free.rank())));
                            }
                            PresentedModule::from_matrix(&free, &m).map_err(core(line, *r))?
                        }
                    }
                };
                let object = if keyword.text == "module" { Object::Module(m) } else { Object::Coeff(m) };
                self.declare(line, name, name.text, object)
            }
            "map" => {
                let (head, c) = clauses(line, rest, &["from", "to", "matrix", "degree"])?;
                let name = self.single(line, head, "a name")?;
                let ring = self.ring(line, s)?;
                let src = parse_free(line, self.required(line, rest, &c, "from")?, &ring)?;
                let tgt = parse_free(line, self.required(line, rest, &c, "to")?, &ring)?;
                let at = self.required(line, rest, &c, "matrix")?;
                let m = parse_matrix(line, at, &ring, src.rank())?;
                check_shape(line, at, &m, tgt.rank(), src.rank())?;
                let f = match c.get("degree") {
                    Some(d) => ModuleMap::new(&src, &tgt, m, parse_int(line, *d)?),
                    None => ModuleMap::infer(&src, &tgt, m),
                }
                .map_err(core(line, at))?;
                self.declare(line, name, name.text, Object::Map(f))
            }
            "twoper" => {
                let (head, c) = clauses(line, rest, &["plus", "minus", "dplus", "dminus", "base"])?;
                let name = self.single(line, head, "a name")?;
                let ring = self.ring(line, s)?;
                let plus = parse_free(line, self.required(line, rest, &c, "plus")?, &ring)?;
                let minus = parse_free(line, self.required(line, rest, &c, "minus")?, &ring)?;
                let dp_at = self.required(line, rest, &c, "dplus")?;
                let dm_at = self.required(line, rest, &c, "dminus")?;
                let dp = parse_matrix(line, dp_at, &ring, plus.rank())?;
                check_shape(line, dp_at, &dp, minus.rank(), plus.rank())?;
                let dm = parse_matrix(line, dm_at, &ring, minus.rank())?;
                check_shape(line, dm_at, &dm, plus.rank(), minus.rank())?;
                let base = self.base(line, &c, &ring)?;
                let e = TwoPeriodicComplex::with_base(&base, &plus, &minus, dp, dm).map_err(core(line, rest))?;
                self.declare(line, name, name.text, Object::Complex(e))
            }
            "koszul" => {
                let (head, c) = clauses(line, rest, &["bundle", "alpha", "beta", "base"])?;
                let name = self.single(line, head, "a name")?;
                let ring = self.ring(line, s)?;
                let bundle = parse_free(line, self.required(line, rest, &c, "bundle")?, &ring)?;
                let list = |key: &str| -> Result<Vec<Polynomial<Q>>, SessionError> {
                    match c.get(key) {
                        Some(at) => parse_list(line, *at, &ring),
                        None if bundle.rank() == 0 => Ok(Vec::new()),
                        None => Err(syntax(line, rest.column, format!("missing clause {key}"))),
                    }
                };
                let (alpha, beta) = (list("alpha")?, list("beta")?);
                let base = self.base(line, &c, &ring)?;
                let pair = SectionCosectionPair::with_base(&base, &bundle, alpha, beta).map_err(core(line, rest))?;
                let e = koszul_complex(&pair).map_err(core(line, rest))?;
                self.declare(line, name, name.text, Object::Pair(pair, e))
            }
            "cosection" => {
                let (head, c) = clauses(line, rest, &["ring", "fiber", "F", "base", "sigma"])?;
                let name = self.single(line, head, "a name")?;
                let (base_name, ring) = match c.get("base") {
                    Some(at) => {
                        let b = self.single(line, *at, "a ring name")?;
                        let r = self.expect(line, b, "a ring", |o| match o {
                            Object::Ring(r) => Some(r.clone()),
                            _ => None,
                        })?;
                        (b.text.to_string(), r)
                    }
                    None => {
                        let r = self.ring(line, s)?;
                        (self.current.as_ref().map(|c| c.0.clone()).unwrap_or_default(), r)
                    }
                };
                let total_name = format!("{}_total", name.text);
                let ring_name = match c.get("ring") {
                    Some(at) => self.single(line, *at, "a ring name")?,
                    None => Span { text: &total_name, column: rest.column },
                };
                let fiber_at = match (c.get("fiber"), c.get("F")) {
                    (Some(at), None) | (None, Some(at)) => *at,
                    (Some(_), Some(at)) => return Err(syntax(line, at.column, "give the fiber once")),
                    (None, None) => return Err(syntax(line, rest.column, "missing clause fiber")),
                };
                let fiber = parse_free(line, fiber_at, &ring)?;
                let sigma = match c.get("sigma") {
                    Some(at) => parse_list(line, *at, &ring)?,
                    None => vec![Polynomial::zero(&ring); fiber.rank()],
                };
                if sigma.len() != fiber.rank() {
                    return Err(syntax(line, rest.column, format!("sigma has {} entries for a fiber of rank {}", sigma.len(), fiber.rank())));
                }
                let model = CosectionModel::new(&fiber, sigma).map_err(core(line, rest))?;
                let total = model.ring().clone();
                self.declare(line, name, name.text, Object::Cosection(model, ring_name.text.to_string(), base_name))?;
                if self.session.objects.contains_key(ring_name.text) {
                    return Err(syntax(line, ring_name.column, format!("{} is already declared", ring_name.text)));
                }
                self.session.objects.insert(ring_name.text.to_string(), Object::Ring(total.clone()));
                self.current = Some((ring_name.text.to_string(), total));
                Ok(())
            }
            "taut" => {
                let (head, c) = clauses(line, rest, &["of"])?;
                let name = self.single(line, head, "a name")?;
                let of = self.single(line, self.required(line, rest, &c, "of")?, "a cosection model")?;
                let model = self.expect(line, of, "a cosection model", |o| match o {
                    Object::Cosection(m, ..) => Some(m.clone()),
                    _ => None,
                })?;
                let e = model.tautological_koszul().map_err(core(line, rest))?;
                self.declare(line, name, name.text, Object::Complex(e))
            }
            "tensor" => {
                let ws = words(rest);
                if ws.len() != 4 || ws[1].text != "=" {
                    return Err(syntax(line, rest.column, "expected tensor NAME = LEFT RIGHT"));
                }
                let (l, r) = (self.complex(line, ws[2])?, self.complex(line, ws[3])?);
                let e = l.tensor(&r).map_err(core(line, rest))?;
                self.declare(line, ws[0], ws[0].text, Object::Complex(e))?;
                let last = self.session.statements.last_mut().expect("just declared");
                last.kind = StatementKind::Tensor { name: ws[0].text.into(), left: ws[2].text.into(), right: ws[3].text.into() };
                Ok(())
            }
            _ => {
                let command = self.command(line, keyword, rest)?;
                self.session.statements.push(Statement { line, kind: StatementKind::Command(command) });
                Ok(())
            }
        }
    }

    fn base(&self, line: usize, c: &HashMap<&'static str, Span<'_>>, ring: &Ring) -> Result<Ideal<Q>, SessionError> {
        match c.get("base") {
            None => Ok(Ideal::zero(ring)),
            Some(at) => match self.session.objects.get(at.text) {
                Some(Object::Ideal(i)) => Ok(i.clone()),
                _ => parse_ideal(line, *at, ring),
            },
        }
    }

    fn ring_statement(&mut self, line: usize, rest: Span<'_>) -> Result<(), SessionError> {
        let (head, c) = clauses(line, rest, &["vars", "weights", "order", "params"])?;
        let name = self.single(line, head, "a name")?;
        let vars_at = self.required(line, rest, &c, "vars")?;
        let names: Vec<&str> = vars_at.text.split(',').map(str::trim).collect();
        let weights: Vec<u32> = match c.get("weights") {
            Some(at) => at
                .text
                .split(',')
                .map(|w| w.trim().parse().map_err(|_| syntax(line, at.column, format!("bad weight {:?}", w.trim()))))
                .collect::<Result<_, _>>()?,
            None => vec![1; names.len()],
        };
        if weights.len() != names.len() {
            return Err(syntax(line, vars_at.column, format!("{} variables but {} weights", names.len(), weights.len())));
        }
        let declared = match c.get("order") {
            Some(at) => MonomialOrder::parse(at.text).ok_or_else(|| syntax(line, at.column, format!("unknown order {}", at.text)))?,
            None => MonomialOrder::default(),
        };
        let params: Vec<bool> = match c.get("params") {
            Some(at) => {
                let ps: Vec<&str> = at.text.split(',').map(str::trim).collect();
                if let Some(bad) = ps.iter().find(|p| !names.contains(p)) {
                    return Err(syntax(line, at.column, format!("parameter {bad} is not a variable")));
                }
                names.iter().map(|n| ps.contains(n)).collect()
            }
            None => vec![false; names.len()],
        };
        let ring = PolyRing::with_parameters(&names, &weights, &params, self.order.unwrap_or(declared)).map_err(core(line, vars_at))?;
        self.declare(line, name, name.text, Object::Ring(ring.clone()))?;
        self.current = Some((name.text.to_string(), ring));
        Ok(())
    }

    fn command(&self, line: usize, keyword: Span<'_>, rest: Span<'_>) -> Result<Command, SessionError> {
        match keyword.text {
            "gb" => {
                let name = self.single(line, rest, "an ideal")?;
                self.expect(line, name, "an ideal", |o| matches!(o, Object::Ideal(_)).then_some(()))?;
                Ok(Command::Gb { ideal: name.text.into() })
            }
            "homology" => {
                let (head, c) = clauses(line, rest, &["with"])?;
                let e = self.single(line, head, "a complex")?;
                self.complex(line, e)?;
                let with = match c.get("with") {
                    Some(g) => Some(self.coefficient(line, *g)?),
                    None => None,
                };
                Ok(Command::Homology { complex: e.text.into(), with })
            }
            "class" => {
                let (head, c) = clauses(line, rest, &["with", "support"])?;
                let e = self.single(line, head, "a complex")?;
                let ring = self.complex(line, e)?.ring().clone();
                let with = self.coefficient(line, self.required(line, rest, &c, "with")?)?;
                let support = self.ideal_ref(line, self.required(line, rest, &c, "support")?, &ring)?;
                Ok(Command::Class { complex: e.text.into(), with, support })
            }
            "gysin" => {
                let (head, c) = clauses(line, rest, &["param", "support"])?;
                let e = self.single(line, head, "a complex")?;
                let ring = self.complex(line, e)?.ring().clone();
                let param = self.single(line, self.required(line, rest, &c, "param")?, "a parameter")?;
                let t = ring.var_index(param.text).ok_or_else(|| syntax(line, param.column, format!("{} is not a variable", param.text)))?;
                if !ring.is_parameter(t) {
                    return Err(syntax(line, param.column, format!("{} is not a deformation parameter", param.text)));
                }
                let support = self.ideal_ref(line, self.required(line, rest, &c, "support")?, &ring.without_var(t))?;
                Ok(Command::Gysin { complex: e.text.into(), param: param.text.into(), support })
            }
            "coslocal" => {
                let (head, c) = clauses(line, rest, &["with", "coeff"])?;
                let m = self.model(line, head)?;
                let at = match c.get("with").or(c.get("coeff")) {
                    Some(at) => *at,
                    None => return Err(syntax(line, rest.column, "missing clause with")),
                };
                let with = self.coefficient(line, at)?;
                Ok(Command::Coslocal { model: m, with })
            }
            "virtual" => {
                let (head, c) = clauses(line, rest, &["map", "cone"])?;
                let m = self.model(line, head)?;
                let map = self.single(line, self.required(line, rest, &c, "map")?, "a map")?;
                self.expect(line, map, "a map", |o| matches!(o, Object::Map(_)).then_some(()))?;
                let cone = self.coefficient(line, self.required(line, rest, &c, "cone")?)?;
                Ok(Command::Virtual { model: m, map: map.text.into(), cone })
            }
            "verify" => self.verify(line, rest).map(Command::Verify),
            other => Err(syntax(line, keyword.column, format!("unknown statement {other}"))),
        }
    }

    fn model(&self, line: usize, at: Span<'_>) -> Result<String, SessionError> {
        let name = self.single(line, at, "a cosection model")?;
        self.expect(line, name, "a cosection model", |o| matches!(o, Object::Cosection(..)).then_some(()))?;
        Ok(name.text.into())
    }

    fn coefficient(&self, line: usize, at: Span<'_>) -> Result<String, SessionError> {
        let name = self.single(line, at, "a module")?;
        self.module(line, name)?;
        Ok(name.text.into())
    }

    fn verify(&self, line: usize, rest: Span<'_>) -> Result<Check, SessionError> {
        let ws = words(rest);
        let what = *ws.first().ok_or_else(|| syntax(line, rest.column, "expected a check name"))?;
        let rest = Span { text: &rest.text[what.text.len()..], column: rest.column + what.text.len() }.trim();
        match what.text {
            "duality" => {
                let name = self.single(line, rest, "a koszul pair")?;
                self.expect(line, name, "a koszul pair", |o| matches!(o, Object::Pair(..)).then_some(()))?;
                Ok(Check::Duality { pair: name.text.into() })
            }
            "additivity" => {
                let (head, c) = clauses(line, rest, &["fplus", "fminus", "with", "support"])?;
                let hw = words(head);
                let [src, tgt] = hw.as_slice() else {
                    return Err(syntax(line, head.column, "expected source and target complexes"));
                };
                let (a, b) = (self.complex(line, *src)?, self.complex(line, *tgt)?);
                let ring = a.ring().clone();
                let fp_at = self.required(line, rest, &c, "fplus")?;
                let fm_at = self.required(line, rest, &c, "fminus")?;
                let f_plus = parse_matrix(line, fp_at, &ring, a.plus().rank())?;
                check_shape(line, fp_at, &f_plus, b.plus().rank(), a.plus().rank())?;
                let f_minus = parse_matrix(line, fm_at, &ring, a.minus().rank())?;
                check_shape(line, fm_at, &f_minus, b.minus().rank(), a.minus().rank())?;
                let with = self.coefficient(line, self.required(line, rest, &c, "with")?)?;
                let support = self.ideal_ref(line, self.required(line, rest, &c, "support")?, &ring)?;
                Ok(Check::Additivity { source: src.text.into(), target: tgt.text.into(), f_plus, f_minus, with, support })
            }
            "multiplicativity" => {
                let (head, c) = clauses(line, rest, &["with", "inner", "support"])?;
                let hw = words(head);
                let [first, second] = hw.as_slice() else {
                    return Err(syntax(line, head.column, "expected two complexes"));
                };
                let ring = self.complex(line, *first)?.ring().clone();
                self.complex(line, *second)?;
                let with = self.coefficient(line, self.required(line, rest, &c, "with")?)?;
                let inner = self.ideal_ref(line, self.required(line, rest, &c, "inner")?, &ring)?;
                let support = self.ideal_ref(line, self.required(line, rest, &c, "support")?, &ring)?;
                Ok(Check::Multiplicativity { first: first.text.into(), second: second.text.into(), with, inner, support })
            }
            "pushforward" => {
                let (head, c) = clauses(line, rest, &["ideal", "with", "support"])?;
                let e = self.single(line, head, "a complex")?;
                let ring = self.complex(line, e)?.ring().clone();
                let ideal = self.ideal_ref(line, self.required(line, rest, &c, "ideal")?, &ring)?;
                let with = self.coefficient(line, self.required(line, rest, &c, "with")?)?;
                let support = self.ideal_ref(line, self.required(line, rest, &c, "support")?, &ring)?;
                Ok(Check::Pushforward { complex: e.text.into(), ideal, with, support })
            }
            other => Err(syntax(line, what.column, format!("unknown check {other}"))),
        }
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_int(line: usize, at: Span<'_>) -> Result<i64, SessionError> {
    at.text.parse().map_err(|_| syntax(line, at.column, format!("bad integer {:?}", at.text)))
}

fn parse_free(line: usize, at: Span<'_>, ring: &Ring) -> Result<GradedFreeModule, SessionError> {
    GradedFreeModule::parse(ring, at.text).map_err(core(line, at))
}

fn parse_matrix(line: usize, at: Span<'_>, ring: &Ring, cols: usize) -> Result<Matrix<Q>, SessionError> {
    Matrix::parse(ring, at.text, Some(cols)).map_err(core(line, at))
}

fn check_shape(line: usize, at: Span<'_>, m: &Matrix<Q>, rows: usize, cols: usize) -> Result<(), SessionError> {
    if m.rows() == rows && (m.cols() == cols || rows == 0) {
        return Ok(());
    }
    Err(SessionError::Core {
        line,
        source: mfk_core::Error::Shape(format!("matrix at column {} is {}x{}, expected {rows}x{cols}", at.column, m.rows(), m.cols())),
    })
}

fn parse_list(line: usize, at: Span<'_>, ring: &Ring) -> Result<Vec<Polynomial<Q>>, SessionError> {
    let mut out = Vec::new();
    let mut column = at.column;
    for part in at.text.split(',') {
        out.push(Polynomial::parse(ring, part).map_err(core(line, Span { text: part, column }))?);
        column += part.len() + 1;
    }
    Ok(out)
}

fn parse_ideal(line: usize, at: Span<'_>, ring: &Ring) -> Result<Ideal<Q>, SessionError> {
    let gens = parse_list(line, at, ring)?.into_iter().filter(|g| !g.is_zero()).collect();
    Ideal::new(ring, gens).map_err(core(line, at))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
ring R vars x,z weights 1,1
ideal I gens x, z   # the origin
coeff G of x
module M R^1+R(-1)^1 rels [[x], [1]]
twoper E plus R^1 minus R(-1)^1 dplus [[0]] dminus [[x]]
koszul K bundle R^2 alpha z, -x beta x, z
tensor T = E K
homology E with G
class E with G support x
verify duality K
cosection S ring RS fiber R^1 sigma x
taut W of S
coeff O of x
coslocal S with O
";

    #[test]
    fn declarations() {
        let s = parse_session("ring R vars x,y weights 1,1", None).unwrap();
        assert!(matches!(s.get("R"), Some(Object::Ring(r)) if r.names() == ["x", "y"]));
        let s = parse_session("ring R vars x\ntwoper E plus R^1 minus R(-1)^1 dplus [[0]] dminus [[x]]", None).unwrap();
        let Some(Object::Complex(e)) = s.get("E") else { panic!("missing complex") };
        assert!(e.d_plus().is_zero());
        assert_eq!(e.d_minus().get(0, 0).to_string(), "x");
    }

    #[test]
    fn malformed_rows_are_named() {
        let err = parse_session("ring R vars x,y\nmodule M R^2 rels [[x, y], [x]]", None).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        assert!(matches!(err, SessionError::Core { line: 2, .. }));
    }

    #[test]
    fn diagnostics_have_positions() {
        let err = parse_session("ring R vars x\nideal I gens x + * 2", None).unwrap_err();
        assert!(matches!(err, SessionError::Syntax { line: 2, column, .. } if column >= 14), "{err:?}");
        let err = parse_session("ring R vars x\nhomology E", None).unwrap_err();
        assert_eq!(err, SessionError::Unresolved { line: 2, name: "E".into() });
        let err = parse_session("ideal I gens x", None).unwrap_err();
        assert!(matches!(err, SessionError::Syntax { line: 1, .. }));
    }

    #[test]
    fn echo_round_trips() {
        let s = parse_session(SAMPLE, None).unwrap();
        let echo = s.echo();
        let again = parse_session(&echo, None).unwrap();
        assert_eq!(again.echo(), echo);
        for name in s.names() {
            match (s.get(name).unwrap(), again.get(name).unwrap()) {
                (Object::Complex(a), Object::Complex(b)) => assert_eq!(a, b),
                (Object::Module(a), Object::Module(b)) | (Object::Coeff(a), Object::Coeff(b)) => assert_eq!(a, b),
                (Object::Ideal(a), Object::Ideal(b)) => assert_eq!(a, b),
                _ => {}
            }
        }
    }

    #[test]
    fn cosection_block_aliases() {
        let text = "ring B vars x\nring C vars u\ncosection S base B F R^1 sigma x\ncoeff G of x*y\ncoslocal S coeff G\n";
        let s = parse_session(text, None).unwrap();
        assert!(matches!(s.get("S_total"), Some(Object::Ring(r)) if r.names() == ["x", "y"]));
        let echo = s.echo();
        assert!(echo.contains("cosection S base B ring S_total fiber R^1 sigma x"), "{echo}");
        assert!(echo.contains("coslocal S with G"), "{echo}");
        assert_eq!(parse_session(&echo, None).unwrap().echo(), echo);
    }

    #[test]
    fn order_override() {
        let s = parse_session("ring R vars x,y order degrevlex", Some(MonomialOrder::Lex)).unwrap();
        assert!(s.echo().contains("order lex"));
    }
}
