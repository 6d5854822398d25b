//! Running the commands of a parsed session.

use mfk_core::cosection::{cosection_localized_gysin, localized_virtual_class};
use mfk_core::kclass::{class_additivity_check, gysin_commutes_check, localized_class, multiplicativity_check, proper_pushforward_check};
use mfk_core::koszul::duality_isomorphism;
use mfk_core::module::PresentedModule;
use mfk_core::ring::Ideal;
use mfk_core::two_periodic::{ChainMap, TwoPeriodicComplex};
use mfk_core::Q;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report;
use crate::session::{Check, Command, IdealRef, Object, Session, SessionError, StatementKind};

/// The result of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub line: usize,
    pub command: String,
    pub output: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip)]
    pub text: Vec<String>,
}

struct Env<'a> {
    session: &'a Session,
    line: usize,
}

impl Env<'_> {
    fn err(&self, e: mfk_core::Error) -> SessionError {
        SessionError::Core { line: self.line, source: e }
    }

    fn complex(&self, name: &str) -> TwoPeriodicComplex<Q> {
        match self.session.get(name) {
            Some(Object::Complex(e) | Object::Pair(_, e)) => e.clone(),
            _ => unreachable!("checked while parsing"),
        }
    }

    fn module(&self, name: &str) -> PresentedModule<Q> {
        match self.session.get(name) {
            Some(Object::Module(m) | Object::Coeff(m)) => m.clone(),
            _ => unreachable!("checked while parsing"),
        }
    }

    fn ideal(&self, r: &IdealRef) -> Ideal<Q> {
        match r {
            IdealRef::Inline(i) => i.clone(),
            IdealRef::Named(n) => match self.session.get(n) {
                Some(Object::Ideal(i)) => i.clone(),
                _ => unreachable!("checked while parsing"),
            },
        }
    }
}

fn module_line(label: &str, m: &PresentedModule<Q>) -> String {
    let mut s = format!("{label} = {}", crate::session::echo_module(m));
    if let Ok(h) = m.hilbert_series() {
        s.push_str(&format!("; series {h}"));
    }
    if let mfk_core::module::Length::Finite(n) = m.length() {
        s.push_str(&format!("; length {n}"));
    }
    s
}

fn class_line(label: &str, c: &mfk_core::kclass::KClass<Q>) -> String {
    format!("{label}: {c}")
}

/// Runs every command in order.
pub fn run_session(session: &Session) -> Result<Vec<Outcome>, SessionError> {
    let echo = session.echo();
    let lines: Vec<&str> = echo.lines().collect();
    let mut out = Vec::new();
    for (k, s) in session.statements().iter().enumerate() {
        let StatementKind::Command(c) = &s.kind else { continue };
        let env = Env { session, line: s.line };
        let (output, verdict, text) = run_command(&env, c)?;
        out.push(Outcome { line: s.line, command: lines[k].to_string(), output, verdict, text });
    }
    Ok(out)
}

fn run_command(env: &Env<'_>, c: &Command) -> Result<(Value, Option<bool>, Vec<String>), SessionError> {
    let e = |x| env.err(x);
    match c {
        Command::Gb { ideal } => {
            let i = env.ideal(&IdealRef::Named(ideal.clone()));
            let gb: Vec<String> = i.groebner_basis().iter().map(ToString::to_string).collect();
            Ok((json!({ "basis": gb }), None, vec![format!("gb {ideal} = ({})", gb.join(", "))]))
        }
        Command::Homology { complex, with } => {
            let x = env.complex(complex);
            let (hp, hm) = match with {
                Some(g) => x.homology_with(&env.module(g)).map_err(e)?,
                None => x.homology().map_err(e)?,
            };
            let text = vec![module_line("H+", &hp), module_line("H-", &hm)];
            Ok((json!({ "plus": report::module(&hp), "minus": report::module(&hm) }), None, text))
        }
        Command::Class { complex, with, support } => {
            let c = localized_class(&env.complex(complex), &env.module(with), &env.ideal(support)).map_err(e)?;
            Ok((report::class(&c), None, vec![class_line("class", &c)]))
        }
        Command::Gysin { complex, param, support } => {
            let x = env.complex(complex);
            let t = x.ring().var_index(param).expect("checked while parsing");
            let v = gysin_commutes_check(&x, t, &env.ideal(support)).map_err(e)?;
            Ok(verdict_output(&v))
        }
        Command::Coslocal { model, with } => {
            let Some(Object::Cosection(m, ..)) = env.session.get(model) else { unreachable!("checked while parsing") };
            let c = cosection_localized_gysin(m, &env.module(with)).map_err(e)?;
            Ok((report::class(&c), None, vec![class_line("localized class", &c)]))
        }
        Command::Virtual { model, map, cone } => {
            let Some(Object::Cosection(m, ..)) = env.session.get(model) else { unreachable!("checked while parsing") };
            let Some(Object::Map(d)) = env.session.get(map) else { unreachable!("checked while parsing") };
            let c = localized_virtual_class(m, d, &env.module(cone)).map_err(e)?;
            Ok((report::class(&c), None, vec![class_line("virtual class", &c)]))
        }
        Command::Verify(check) => run_check(env, check),
    }
}

fn verdict_output(v: &mfk_core::kclass::Verdict<Q>) -> (Value, Option<bool>, Vec<String>) {
    let text = vec![class_line("lhs", &v.lhs), class_line("rhs", &v.rhs), format!("holds: {}", v.holds())];
    (report::verdict(v), Some(v.holds()), text)
}

fn run_check(env: &Env<'_>, check: &Check) -> Result<(Value, Option<bool>, Vec<String>), SessionError> {
    let e = |x| env.err(x);
    match check {
        Check::Duality { pair } => {
            let Some(Object::Pair(p, _)) = env.session.get(pair) else { unreachable!("checked while parsing") };
            let ok = duality_isomorphism(p).is_ok();
            Ok((json!({ "chain_map": ok }), Some(ok), vec![format!("duality chain map verified: {ok}")]))
        }
        Check::Additivity { source, target, f_plus, f_minus, with, support } => {
            let f = ChainMap::new(&env.complex(source), &env.complex(target), f_plus.clone(), f_minus.clone()).map_err(e)?;
            Ok(verdict_output(&class_additivity_check(&f, &env.module(with), &env.ideal(support)).map_err(e)?))
        }
        Check::Multiplicativity { first, second, with, inner, support } => {
            let v = multiplicativity_check(&env.complex(first), &env.complex(second), &env.module(with), &env.ideal(inner), &env.ideal(support))
                .map_err(e)?;
            Ok(verdict_output(&v))
        }
        Check::Pushforward { complex, ideal, with, support } => {
            let v = proper_pushforward_check(&env.complex(complex), &env.ideal(ideal), &env.module(with), &env.ideal(support)).map_err(e)?;
            Ok(verdict_output(&v))
        }
    }
}
