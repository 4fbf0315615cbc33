//! Terms over `(∨, ∧, ′, 0, 1)` and the formulas built from them.
//! The exhaustive checker decides a formula on a finite algebra.
//!
//! Terms are written as prefix s-expressions:
//! `(join x (comp (meet y z)))`, with `bot`/`0` and `top`/`1` for the
//! constants. `join` and `meet` accept two or more arguments and fold to the
//! left.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::algebra::Algebra;
use crate::{Elem, Error, Result, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Bot,
    Top,
    Comp(Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn comp(t: Term) -> Term {
    Term::Comp(Box::new(t))
}

pub fn join(a: Term, b: Term) -> Term {
    Term::Join(Box::new(a), Box::new(b))
}

pub fn meet(a: Term, b: Term) -> Term {
    Term::Meet(Box::new(a), Box::new(b))
}

/// `t` complemented `k` times, written `t^(k)`.
pub fn iter_comp(t: Term, k: usize) -> Term {
    (0..k).fold(t, |acc, _| comp(acc))
}

/// Left fold of `join` over a non-empty list.
pub fn join_all(terms: impl IntoIterator<Item = Term>) -> Term {
    terms
        .into_iter()
        .reduce(join)
        .expect("join of an empty list")
}

/// Left fold of `meet` over a non-empty list.
pub fn meet_all(terms: impl IntoIterator<Item = Term>) -> Term {
    terms
        .into_iter()
        .reduce(meet)
        .expect("meet of an empty list")
}

impl Term {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Bot | Term::Top => {}
            Term::Comp(t) => t.collect_vars(out),
            Term::Join(a, b) | Term::Meet(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Replaces every variable by the term `f` returns for it.
    pub fn substitute(&self, f: &impl Fn(&str) -> Term) -> Term {
        match self {
            Term::Var(v) => f(v),
            Term::Bot => Term::Bot,
            Term::Top => Term::Top,
            Term::Comp(t) => comp(t.substitute(f)),
            Term::Join(a, b) => join(a.substitute(f), b.substitute(f)),
            Term::Meet(a, b) => meet(a.substitute(f), b.substitute(f)),
        }
    }

    pub fn parse(text: &str) -> Result<Term> {
        let mut p = Parser { text, pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Bot => f.write_str("bot"),
            Term::Top => f.write_str("top"),
            Term::Comp(t) => write!(f, "(comp {t})"),
            Term::Join(a, b) => write!(f, "(join {a} {b})"),
            Term::Meet(a, b) => write!(f, "(meet {a} {b})"),
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        Term::parse(s)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn atom(&mut self) -> &str {
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(rest.len());
        self.pos += len;
        &self.text[start..start + len]
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(')') => Err(self.error("unexpected ')'")),
            Some('(') => {
                self.pos += 1;
                self.skip_ws();
                let head_pos = self.pos;
                let head = self.atom().to_string();
                let mut args = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => return Err(self.error("missing ')'")),
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => args.push(self.term()?),
                    }
                }
                let arity_error = |msg: &str| Error::Syntax {
                    pos: head_pos,
                    msg: msg.to_string(),
                };
                match head.as_str() {
                    "comp" if args.len() == 1 => Ok(comp(args.pop().unwrap())),
                    "comp" => Err(arity_error("comp takes exactly one argument")),
                    "join" | "meet" if args.len() < 2 => {
                        Err(arity_error("join and meet take at least two arguments"))
                    }
                    "join" => Ok(join_all(args)),
                    "meet" => Ok(meet_all(args)),
                    "" => Err(arity_error("missing operator")),
                    other => Err(arity_error(&format!("unknown operator {other}"))),
                }
            }
            Some(_) => {
                let start = self.pos;
                let word = self.atom();
                match word {
                    "bot" | "0" => Ok(Term::Bot),
                    "top" | "1" => Ok(Term::Top),
                    w if is_identifier(w) => Ok(Term::Var(w.to_string())),
                    _ => Err(Error::Syntax {
                        pos: start,
                        msg: format!("bad variable name {word:?}"),
                    }),
                }
            }
        }
    }
}

fn is_identifier(w: &str) -> bool {
    let mut chars = w.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `lhs ≈ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    /// `s ≤ t`, encoded as `s ≈ s ∧ t`.
    pub fn leq(s: Term, t: Term) -> Self {
        Equation {
            rhs: meet(s.clone(), t),
            lhs: s,
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Identity(Equation),
    Inequality(Term, Term),
    Quasi {
        premises: Vec<Equation>,
        conclusion: Equation,
    },
    /// Conjunction of formulas over a shared variable set.
    All(Vec<Formula>),
}

/// One implication `premises ⇒ conclusion` after desugaring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl Formula {
    pub fn identity(lhs: Term, rhs: Term) -> Self {
        Formula::Identity(Equation::new(lhs, rhs))
    }

    pub fn quasi(premises: Vec<Equation>, conclusion: Equation) -> Self {
        Formula::Quasi {
            premises,
            conclusion,
        }
    }

    pub fn clauses(&self) -> Vec<Clause> {
        match self {
            Formula::Identity(e) => vec![Clause {
                premises: vec![],
                conclusion: e.clone(),
            }],
            Formula::Inequality(s, t) => vec![Clause {
                premises: vec![],
                conclusion: Equation::leq(s.clone(), t.clone()),
            }],
            Formula::Quasi {
                premises,
                conclusion,
            } => vec![Clause {
                premises: premises.clone(),
                conclusion: conclusion.clone(),
            }],
            Formula::All(parts) => parts.iter().flat_map(Formula::clauses).collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for c in self.clauses() {
            for e in c.premises.iter().chain(std::iter::once(&c.conclusion)) {
                e.lhs.collect_vars(&mut out);
                e.rhs.collect_vars(&mut out);
            }
        }
        out
    }

    /// Reads the JSON formula format:
    /// `{"premises": [{"lhs": "...", "rhs": "..."}], "conclusion": {...}}`.
    pub fn from_json(text: &str) -> Result<Formula> {
        #[derive(Deserialize)]
        struct Eq {
            lhs: String,
            rhs: String,
        }
        #[derive(Deserialize)]
        struct Doc {
            #[serde(default)]
            premises: Vec<Eq>,
            conclusion: Eq,
        }
        let doc: Doc = serde_json::from_str(text)?;
        let eq = |e: &Eq| -> Result<Equation> {
            Ok(Equation::new(Term::parse(&e.lhs)?, Term::parse(&e.rhs)?))
        };
        let premises = doc.premises.iter().map(eq).collect::<Result<Vec<_>>>()?;
        let conclusion = eq(&doc.conclusion)?;
        Ok(if premises.is_empty() {
            Formula::Identity(conclusion)
        } else {
            Formula::quasi(premises, conclusion)
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Identity(e) => write!(f, "{e}"),
            Formula::Inequality(s, t) => write!(f, "{s} <= {t}"),
            Formula::Quasi {
                premises,
                conclusion,
            } => {
                let ps: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
                write!(f, "{} => {conclusion}", ps.join(" & "))
            }
            Formula::All(parts) => {
                let ps: Vec<String> = parts.iter().map(|p| format!("[{p}]")).collect();
                f.write_str(&ps.join(" and "))
            }
        }
    }
}

/// Evaluates `t` under `assignment`, given as `(variable, element)` pairs.
pub fn eval_term(alg: &Algebra, t: &Term, assignment: &[(&str, Elem)]) -> Result<Elem> {
    Ok(match t {
        Term::Var(v) => assignment
            .iter()
            .find(|(name, _)| *name == v)
            .map(|&(_, e)| e)
            .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Term::Bot => alg.bottom(),
        Term::Top => alg.top(),
        Term::Comp(a) => alg.comp(eval_term(alg, a, assignment)?),
        Term::Join(a, b) => alg.join(
            eval_term(alg, a, assignment)?,
            eval_term(alg, b, assignment)?,
        ),
        Term::Meet(a, b) => alg.meet(
            eval_term(alg, a, assignment)?,
            eval_term(alg, b, assignment)?,
        ),
    })
}

/// The first assignment, in enumeration order, at which a clause fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Index into [`Formula::clauses`].
    pub clause: usize,
    pub assignment: Vec<(String, Elem)>,
}

impl Counterexample {
    pub fn value(&self, name: &str) -> Option<Elem> {
        self.assignment
            .iter()
            .find(|(v, _)| v == name)
            .map(|&(_, e)| e)
    }

    pub fn describe(&self, alg: &Algebra) -> String {
        self.assignment
            .iter()
            .map(|(v, e)| format!("{v}={}", alg.label(*e)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// The evaluation cap: `LATCOMP_BUDGET` if set and valid, else 10^9.
pub fn default_budget() -> u64 {
    std::env::var("LATCOMP_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

pub fn check_formula(alg: &Algebra, f: &Formula) -> Result<Verdict<Counterexample>> {
    check_formula_with_budget(alg, f, default_budget())
}

/// Decides `f` on `alg` by enumerating every assignment.
///
/// Variables are sorted alphabetically and assignments run in mixed-radix
/// order with the first variable most significant, so the reported
/// counterexample is the lexicographically least one whatever the thread
/// count.
pub fn check_formula_with_budget(
    alg: &Algebra,
    f: &Formula,
    budget: u64,
) -> Result<Verdict<Counterexample>> {
    let vars: Vec<String> = f.vars().into_iter().collect();
    let n = alg.size();
    let m = vars.len();
    let total = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::budget(format!("{n}^{m}"), budget));
    }
    let clauses: Vec<CompiledClause> = f
        .clauses()
        .iter()
        .map(|c| CompiledClause::new(c, &vars, alg))
        .collect();

    // Split the space on a prefix of the variables; each chunk runs its own
    // odometer over the remaining positions.
    let mut depth = 0;
    let mut chunks = 1u64;
    if total >= 4096 {
        while depth < m && chunks < 512 {
            chunks *= n as u64;
            depth += 1;
        }
    }
    let hit = (0..chunks).into_par_iter().find_map_first(|chunk| {
        let mut prefix = vec![0; m];
        let mut c = chunk;
        for p in (0..depth).rev() {
            prefix[p] = (c % n as u64) as u32;
            c /= n as u64;
        }
        run_chunk(alg, &clauses, prefix, depth)
    });
    Ok(Verdict::from_witness(hit.map(|(clause, assignment)| {
        Counterexample {
            clause,
            assignment: vars
                .iter()
                .zip(assignment)
                .map(|(v, e)| (v.clone(), e as Elem))
                .collect(),
        }
    })))
}

fn run_chunk(
    alg: &Algebra,
    clauses: &[CompiledClause],
    mut values: Vec<u32>,
    fixed: usize,
) -> Option<(usize, Vec<u32>)> {
    let n = alg.size() as u32;
    let m = values.len();
    let mut states: Vec<ClauseState> = clauses.iter().map(ClauseState::new).collect();
    let mut changed_from = 0;
    loop {
        for (i, (c, s)) in clauses.iter().zip(states.iter_mut()).enumerate() {
            if !c.holds(alg, s, &values, changed_from) {
                return Some((i, values));
            }
        }
        // Advance the odometer over the free positions.
        let mut p = m;
        loop {
            if p == fixed {
                return None;
            }
            p -= 1;
            values[p] += 1;
            if values[p] < n {
                break;
            }
            values[p] = 0;
        }
        changed_from = p;
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Const(u32),
    Comp(usize),
    Join(usize, usize),
    Meet(usize, usize),
}

/// A hash-consed straight-line program for a set of terms. Nodes are sorted
/// by the highest variable position they depend on, so after the variables
/// from position `p` on change only the suffix starting at `start[p]` needs
/// recomputing.
#[derive(Clone, Debug)]
struct Program {
    ops: Vec<Op>,
    start: Vec<usize>,
    roots: Vec<usize>,
}

impl Program {
    fn new(terms: &[&Term], vars: &[String], alg: &Algebra) -> Program {
        let mut ops = Vec::new();
        let mut level = Vec::new();
        let mut seen: HashMap<(u8, usize, usize), usize> = HashMap::new();
        let roots: Vec<usize> = terms
            .iter()
            .map(|t| Self::emit(t, vars, alg, &mut ops, &mut level, &mut seen))
            .collect();
        // Stable sort by level keeps children before parents.
        let mut order: Vec<usize> = (0..ops.len()).collect();
        order.sort_by_key(|&i| level[i]);
        let mut new_index = vec![0; ops.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let remap = |op: Op| match op {
            Op::Comp(a) => Op::Comp(new_index[a]),
            Op::Join(a, b) => Op::Join(new_index[a], new_index[b]),
            Op::Meet(a, b) => Op::Meet(new_index[a], new_index[b]),
            other => other,
        };
        let sorted_ops: Vec<Op> = order.iter().map(|&i| remap(ops[i])).collect();
        let sorted_levels: Vec<usize> = order.iter().map(|&i| level[i]).collect();
        let start = (0..=vars.len())
            .map(|p| sorted_levels.partition_point(|&l| l <= p))
            .collect();
        Program {
            ops: sorted_ops,
            start,
            roots: roots.into_iter().map(|r| new_index[r]).collect(),
        }
    }

    fn emit(
        t: &Term,
        vars: &[String],
        alg: &Algebra,
        ops: &mut Vec<Op>,
        level: &mut Vec<usize>,
        seen: &mut HashMap<(u8, usize, usize), usize>,
    ) -> usize {
        let (key, op, lvl) = match t {
            Term::Var(v) => {
                let i = vars
                    .iter()
                    .position(|w| w == v)
                    .expect("variable list is complete");
                ((0, i, 0), Op::Var(i), i + 1)
            }
            Term::Bot => ((1, 0, 0), Op::Const(alg.bottom() as u32), 0),
            Term::Top => ((2, 0, 0), Op::Const(alg.top() as u32), 0),
            Term::Comp(a) => {
                let a = Self::emit(a, vars, alg, ops, level, seen);
                ((3, a, 0), Op::Comp(a), level[a])
            }
            Term::Join(a, b) => {
                let a = Self::emit(a, vars, alg, ops, level, seen);
                let b = Self::emit(b, vars, alg, ops, level, seen);
                ((4, a, b), Op::Join(a, b), level[a].max(level[b]))
            }
            Term::Meet(a, b) => {
                let a = Self::emit(a, vars, alg, ops, level, seen);
                let b = Self::emit(b, vars, alg, ops, level, seen);
                ((5, a, b), Op::Meet(a, b), level[a].max(level[b]))
            }
        };
        *seen.entry(key).or_insert_with(|| {
            ops.push(op);
            level.push(lvl);
            ops.len() - 1
        })
    }

    /// Recomputes nodes from index `from` on.
    #[inline]
    fn update(&self, alg: &Algebra, vals: &mut [u32], assignment: &[u32], from: usize) {
        for i in from..self.ops.len() {
            vals[i] = match self.ops[i] {
                Op::Var(v) => assignment[v],
                Op::Const(c) => c,
                Op::Comp(a) => alg.comp(vals[a] as usize) as u32,
                Op::Join(a, b) => alg.join(vals[a] as usize, vals[b] as usize) as u32,
                Op::Meet(a, b) => alg.meet(vals[a] as usize, vals[b] as usize) as u32,
            };
        }
    }
}

#[derive(Clone, Debug)]
struct CompiledClause {
    premises: Program,
    conclusion: Program,
}

struct ClauseState {
    premise_vals: Vec<u32>,
    conclusion_vals: Vec<u32>,
    /// First conclusion node that is out of date; `usize::MAX` when current.
    conclusion_stale: usize,
    first: bool,
}

impl ClauseState {
    fn new(c: &CompiledClause) -> Self {
        ClauseState {
            premise_vals: vec![0; c.premises.ops.len()],
            conclusion_vals: vec![0; c.conclusion.ops.len()],
            conclusion_stale: 0,
            first: true,
        }
    }
}

impl CompiledClause {
    fn new(c: &Clause, vars: &[String], alg: &Algebra) -> Self {
        let premise_terms: Vec<&Term> = c.premises.iter().flat_map(|e| [&e.lhs, &e.rhs]).collect();
        CompiledClause {
            premises: Program::new(&premise_terms, vars, alg),
            conclusion: Program::new(&[&c.conclusion.lhs, &c.conclusion.rhs], vars, alg),
        }
    }

    /// Evaluates the clause after the variables from `changed_from` on took
    /// new values. The conclusion is skipped while a premise fails and
    /// caught up lazily once all premises hold again.
    fn holds(
        &self,
        alg: &Algebra,
        s: &mut ClauseState,
        assignment: &[u32],
        changed_from: usize,
    ) -> bool {
        let premise_from = if s.first {
            s.first = false;
            0
        } else {
            s.conclusion_stale = s.conclusion_stale.min(self.conclusion.start[changed_from]);
            self.premises.start[changed_from]
        };
        self.premises
            .update(alg, &mut s.premise_vals, assignment, premise_from);
        let premises_hold = self
            .premises
            .roots
            .chunks(2)
            .all(|r| s.premise_vals[r[0]] == s.premise_vals[r[1]]);
        if !premises_hold {
            return true;
        }
        if s.conclusion_stale != usize::MAX {
            self.conclusion
                .update(alg, &mut s.conclusion_vals, assignment, s.conclusion_stale);
            s.conclusion_stale = usize::MAX;
        }
        let r = &self.conclusion.roots;
        s.conclusion_vals[r[0]] == s.conclusion_vals[r[1]]
    }
}

/// `τ_n(x) = ⋀_{2≤k<n} (x ∨ x^(k))`.
pub fn tau_term(n: usize) -> Result<Term> {
    tau_of(n, var("x"))
}

fn tau_of(n: usize, x: Term) -> Result<Term> {
    if n < 3 {
        return Err(Error::BadParams(format!("tau_n needs n >= 3, got {n}")));
    }
    Ok(meet_all(
        (2..n).map(|k| join(x.clone(), iter_comp(x.clone(), k))),
    ))
}

/// `x + y = (x′ ∧ y) ∨ (x ∧ y′)`.
pub fn symdiff(x: Term, y: Term) -> Term {
    join(meet(comp(x.clone()), y.clone()), meet(x, comp(y)))
}

/// `x ⊕ y = (x ∨ y) ∧ (x ∧ y)′`.
pub fn oplus(x: Term, y: Term) -> Term {
    meet(join(x.clone(), y.clone()), comp(meet(x, y)))
}

/// `x ⊙ y = (x ∧ y) ∨ (x ∨ y)′`.
pub fn odot(x: Term, y: Term) -> Term {
    join(meet(x.clone(), y.clone()), comp(join(x, y)))
}

/// The discriminator candidate `(τ_n(d) ∧ x) ∨ (τ_n(d)′ ∧ z)` with `d`
/// either `x ⊕ y` or `x + y`.
pub fn discriminator_term(n: usize, use_plus: bool) -> Result<Term> {
    let (x, y, z) = (var("x"), var("y"), var("z"));
    let d = if use_plus {
        symdiff(x.clone(), y)
    } else {
        oplus(x.clone(), y)
    };
    let t = tau_of(n, d)?;
    Ok(join(meet(t.clone(), x), meet(comp(t), z)))
}

/// Pixley candidate `p(x,y,z) = (x∧y∧z) ∨ (x∧(x∧y)′) ∨ (z∧(z∧y)′)`.
pub fn pixley_p(x: Term, y: Term, z: Term) -> Term {
    join_all([
        meet_all([x.clone(), y.clone(), z.clone()]),
        meet(x.clone(), comp(meet(x, y.clone()))),
        meet(z.clone(), comp(meet(z, y))),
    ])
}

/// The dual `q(x,y,z) = (x∨y∨z) ∧ (x∨(x∨y)′) ∧ (z∨(z∨y)′)`.
pub fn pixley_q(x: Term, y: Term, z: Term) -> Term {
    meet_all([
        join_all([x.clone(), y.clone(), z.clone()]),
        join(x.clone(), comp(join(x, y.clone()))),
        join(z.clone(), comp(join(z, y))),
    ])
}

fn pixley_identities(p: fn(Term, Term, Term) -> Term) -> Formula {
    let (x, y) = (var("x"), var("y"));
    Formula::All(vec![
        Formula::identity(p(x.clone(), y.clone(), y.clone()), x.clone()),
        Formula::identity(p(x.clone(), y.clone(), x.clone()), x.clone()),
        Formula::identity(p(y.clone(), y, x.clone()), x),
    ])
}

/// Both directions of `d(x, y) ≈ c ⇔ x ≈ y`.
fn difference_law(d: Term, c: Term) -> Formula {
    let (x, y) = (var("x"), var("y"));
    Formula::All(vec![
        Formula::quasi(
            vec![Equation::new(d.clone(), c.clone())],
            Equation::new(x.clone(), y.clone()),
        ),
        Formula::quasi(vec![Equation::new(x, y)], Equation::new(d, c)),
    ])
}

/// Both directions of `t1 ≈ t2 ≈ z ⇔ x ≈ y`.
fn regularity_law(t1: Term, t2: Term) -> Formula {
    let (x, y, z) = (var("x"), var("y"), var("z"));
    let eqs = vec![Equation::new(t1, z.clone()), Equation::new(t2, z)];
    let mut parts = vec![Formula::quasi(
        eqs.clone(),
        Equation::new(x.clone(), y.clone()),
    )];
    for e in eqs {
        parts.push(Formula::quasi(vec![Equation::new(x.clone(), y.clone())], e));
    }
    Formula::All(parts)
}

/// Names accepted by [`builtin_formula`].
pub const BUILTIN_NAMES: &[&str] = &[
    "DM", "W", "W+", "EQ2", "WOML", "DWOML", "WOML-ID", "DWOML-ID", "WOML+", "DWOML+", "Mn", "M3",
    "jo", "Tn", "EXX", "ATAU", "PIXLEY-P", "PIXLEY-Q", "REG-D", "REG-DD", "REG-ER", "REG-ERD",
    "SYMDIFF", "PENTA-II",
];

fn one_param(name: &str, params: &[usize], min: usize) -> Result<usize> {
    match params {
        [n] if *n >= min => Ok(*n),
        [n] => Err(Error::BadParams(format!(
            "{name} needs n >= {min}, got {n}"
        ))),
        _ => Err(Error::BadParams(format!(
            "{name} takes exactly one parameter n"
        ))),
    }
}

fn no_params(name: &str, params: &[usize]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::BadParams(format!("{name} takes no parameters")))
    }
}

/// Looks up a named formula.
///
/// `Mn` takes `n ≥ 2` and uses variables `x0..xn`; `Tn` and `ATAU` take
/// `n ≥ 3`. Every other name takes no parameters.
pub fn builtin_formula(name: &str, params: &[usize]) -> Result<Formula> {
    let (x, y, z, u) = (var("x"), var("y"), var("z"), var("u"));
    let c = |t: &Term| comp(t.clone());
    let f = match name {
        "Mn" => {
            let n = one_param(name, params, 2)?;
            let xi = |i: usize| var(&format!("x{i}"));
            let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
            let lhs =
                meet_all(std::iter::once(xi(0)).chain(pairs.map(|(i, j)| join(xi(i), xi(j)))));
            let rhs = join_all((1..=n).map(|i| meet(xi(0), xi(i))));
            return Ok(Formula::Inequality(lhs, rhs));
        }
        "Tn" => {
            let n = one_param(name, params, 3)?;
            let t = tau_of(n, y)?;
            return Ok(Formula::identity(
                meet(x.clone(), join(t.clone(), z.clone())),
                join(meet(x.clone(), t), meet(x, z)),
            ));
        }
        "ATAU" => {
            let n = one_param(name, params, 3)?;
            let t = tau_of(n, x)?;
            return Ok(Formula::identity(iter_comp(t.clone(), 2), t));
        }
        _ => {
            no_params(name, params)?;
            name
        }
    };
    Ok(match f {
        "DM" => Formula::All(vec![
            Formula::identity(c(&join(x.clone(), y.clone())), meet(c(&x), c(&y))),
            Formula::identity(c(&meet(x.clone(), y.clone())), join(c(&x), c(&y))),
        ]),
        "W" => Formula::quasi(
            vec![
                Equation::new(meet(c(&x), y.clone()), Term::Bot),
                Equation::new(meet(x.clone(), c(&y)), Term::Bot),
            ],
            Equation::new(x, y),
        ),
        "W+" => Formula::quasi(
            vec![Equation::new(symdiff(x.clone(), y.clone()), Term::Bot)],
            Equation::new(x, y),
        ),
        "EQ2" => Formula::quasi(
            vec![Equation::new(meet(x.clone(), c(&y)), Term::Bot)],
            Equation::leq(x, y),
        ),
        "WOML" => Formula::quasi(
            vec![Equation::leq(x.clone(), y.clone())],
            Equation::new(join(x.clone(), meet(c(&x), y.clone())), y),
        ),
        "DWOML" => Formula::quasi(
            vec![Equation::leq(y.clone(), x.clone())],
            Equation::new(meet(x.clone(), join(c(&x), y.clone())), y),
        ),
        "WOML-ID" => Formula::identity(
            join(x.clone(), meet(c(&meet(x.clone(), y.clone())), y.clone())),
            join(x, y),
        ),
        "DWOML-ID" => Formula::identity(
            meet(x.clone(), join(c(&join(x.clone(), y.clone())), y.clone())),
            meet(x, y),
        ),
        "WOML+" => Formula::quasi(
            vec![Equation::leq(c(&x), y.clone())],
            Equation::new(join(c(&x), meet(x, y.clone())), y),
        ),
        "DWOML+" => Formula::quasi(
            vec![Equation::leq(y.clone(), c(&x))],
            Equation::new(meet(c(&x), join(x, y.clone())), y),
        ),
        "M3" => Formula::Inequality(
            meet_all([
                u.clone(),
                join(x.clone(), y.clone()),
                join(x.clone(), z.clone()),
                join(y.clone(), z.clone()),
            ]),
            join_all([meet(u.clone(), x), meet(u.clone(), y), meet(u, z)]),
        ),
        "jo" => Formula::Inequality(
            meet_all([
                u.clone(),
                join(x.clone(), meet(y.clone(), z.clone())),
                join(y.clone(), z.clone()),
            ]),
            join_all([x, meet(u.clone(), y), meet(u, z)]),
        ),
        "EXX" => {
            let t = join(x.clone(), iter_comp(x, 2));
            Formula::identity(iter_comp(t.clone(), 2), t)
        }
        "PIXLEY-P" => pixley_identities(pixley_p),
        "PIXLEY-Q" => pixley_identities(pixley_q),
        "REG-D" => difference_law(oplus(x, y), Term::Bot),
        "REG-DD" => difference_law(odot(x, y), Term::Top),
        "REG-ER" => {
            let d = oplus(x, y);
            regularity_law(join(d.clone(), z.clone()), meet(c(&d), z))
        }
        "REG-ERD" => {
            let d = odot(x, y);
            regularity_law(meet(d.clone(), z.clone()), join(c(&d), z))
        }
        "SYMDIFF" => Formula::All(vec![
            Formula::identity(symdiff(x.clone(), x.clone()), Term::Bot),
            Formula::identity(symdiff(x.clone(), y.clone()), symdiff(y, x.clone())),
            Formula::identity(symdiff(x.clone(), Term::Bot), x.clone()),
            Formula::identity(symdiff(x.clone(), Term::Top), c(&x)),
        ]),
        "PENTA-II" => Formula::quasi(
            vec![
                Equation::leq(x.clone(), y.clone()),
                Equation::new(c(&x), c(&y)),
            ],
            Equation::new(x, y),
        ),
        other => return Err(Error::UnknownFormula(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_join_with_complement() {
        let t = Term::parse("(join x (comp x))").unwrap();
        assert_eq!(t, join(var("x"), comp(var("x"))));
    }

    #[test]
    fn tau4_parses_to_the_builtin() {
        let t =
            Term::parse("(meet (join x (comp (comp x))) (join x (comp (comp (comp x)))))").unwrap();
        assert_eq!(t, tau_term(4).unwrap());
    }

    #[test]
    fn tau3_is_x_join_x_double_prime() {
        assert_eq!(tau_term(3).unwrap(), join(var("x"), iter_comp(var("x"), 2)));
        assert!(matches!(tau_term(2), Err(Error::BadParams(_))));
    }

    #[test]
    fn unclosed_paren_is_a_syntax_error() {
        assert!(matches!(Term::parse("(join x"), Err(Error::Syntax { .. })));
        assert!(matches!(
            Term::parse("(comp x y)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            Term::parse("x y"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            Term::parse("(frob x y)"),
            Err(Error::Syntax { pos: 1, .. })
        ));
    }

    #[test]
    fn nary_join_folds_left() {
        let t = Term::parse("(join a b c)").unwrap();
        assert_eq!(t, join(join(var("a"), var("b")), var("c")));
        assert_eq!(t.to_string(), "(join (join a b) c)");
    }

    #[test]
    fn constants_have_two_spellings() {
        assert_eq!(Term::parse("0").unwrap(), Term::Bot);
        assert_eq!(Term::parse("top").unwrap(), Term::Top);
    }

    #[test]
    fn registry_parameters() {
        assert!(matches!(
            builtin_formula("Tn", &[2]),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            builtin_formula("Mn", &[1]),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            builtin_formula("W", &[3]),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            builtin_formula("nope", &[]),
            Err(Error::UnknownFormula(_))
        ));
        for name in BUILTIN_NAMES {
            let params: &[usize] = match *name {
                "Mn" | "Tn" | "ATAU" => &[3],
                _ => &[],
            };
            builtin_formula(name, params).unwrap();
        }
    }

    #[test]
    fn m3_identity_has_four_variables() {
        let f = builtin_formula("Mn", &[3]).unwrap();
        let vars: Vec<String> = f.vars().into_iter().collect();
        assert_eq!(vars, ["x0", "x1", "x2", "x3"]);
        let w = builtin_formula("W", &[]).unwrap();
        assert!(matches!(&w, Formula::Quasi { premises, .. } if premises.len() == 2));
    }

    #[test]
    fn formula_json() {
        let f = Formula::from_json(
            r#"{"premises": [{"lhs": "(meet (comp x) y)", "rhs": "0"},
                             {"lhs": "(meet x (comp y))", "rhs": "bot"}],
                "conclusion": {"lhs": "x", "rhs": "y"}}"#,
        )
        .unwrap();
        assert_eq!(f, builtin_formula("W", &[]).unwrap());
    }
}
