//! Normal logic programs: parsing, grounding, level inference, the
//! immediate-consequence operator and supported-model solving.
//!
//! Program text:
//!
//! ```text
//! % comment
//! #atom r.              % admit `r` to the Herbrand base
//! q(a). q(b).
//! p(X) :- q(X), not r.
//! ```
//!
//! Programs are function-free; constants are lower-case identifiers or
//! integers, variables start with an upper-case letter or `_`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::herbrand::{AtomId, Base, HerbrandError, HerbrandSpace, Interpretation, LevelMap};
use crate::solver::{solve_fixed_point, Endofunction, FixResult, SolveConfig, SolveError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| matches!(t, Term::Const(_)))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
            write!(f, "({})", args.join(","))?;
        }
        Ok(())
    }
}

/// `head :- positive..., not negative...`; a fact has both bodies empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub head: Atom,
    pub positive: Vec<Atom>,
    pub negative: Vec<Atom>,
}

impl Clause {
    fn variables(&self) -> BTreeSet<String> {
        std::iter::once(&self.head)
            .chain(&self.positive)
            .chain(&self.negative)
            .flat_map(|a| &a.args)
            .filter_map(|t| match t {
                Term::Var(v) => Some(v.clone()),
                Term::Const(_) => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub clauses: Vec<Clause>,
    /// Ground atoms admitted to the base by `#atom`.
    pub declared: Vec<Atom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    Unexpected {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
    FunctionSymbol(String),
    Reserved(String),
    NonGroundDeclaration(String),
    UnknownDirective(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "expected {expected}, found `{found}`")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "expected {expected}, found end of input")
            }
            ParseErrorKind::FunctionSymbol(name) => {
                write!(
                    f,
                    "function symbols are unsupported (`{name}(...)` used as a term)"
                )
            }
            ParseErrorKind::Reserved(word) => write!(f, "`{word}` is reserved"),
            ParseErrorKind::NonGroundDeclaration(atom) => {
                write!(f, "`#atom` declarations must be ground, got `{atom}`")
            }
            ParseErrorKind::UnknownDirective(d) => write!(f, "unknown directive `#{d}`"),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("clause `{0}` has variables but the constant set is empty")]
    NoConstants(String),
    #[error("program is not locally hierarchical: dependency cycle {}", render_cycle(.cycle))]
    NotLocallyHierarchical { cycle: Vec<String> },
    #[error("base of {0} atoms is too large for exhaustive search (limit 20)")]
    BaseTooLarge(usize),
    #[error(transparent)]
    Herbrand(#[from] HerbrandError),
    #[error("solver failed: {0}")]
    Solver(Box<SolveError<Interpretation>>),
}

fn render_cycle(cycle: &[String]) -> String {
    let mut parts: Vec<&str> = cycle.iter().map(String::as_str).collect();
    if let Some(first) = cycle.first() {
        parts.push(first);
    }
    parts.join(" -> ")
}

// ---------------------------------------------------------------------------
// Lexing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Neck,
    Hash,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Var(s) | Tok::Int(s) => f.write_str(s),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Comma => f.write_str(","),
            Tok::Dot => f.write_str("."),
            Tok::Neck => f.write_str(":-"),
            Tok::Hash => f.write_str("#"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
                continue;
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            '.' => {
                bump(&mut chars);
                Tok::Dot
            }
            '#' => {
                bump(&mut chars);
                Tok::Hash
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    Tok::Neck
                } else {
                    return Err(ParseError {
                        line: l,
                        column: col,
                        kind: ParseErrorKind::UnexpectedChar(':'),
                    });
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                let first = word.chars().next().expect("non-empty word");
                if first.is_ascii_digit() {
                    if !word.chars().all(|c| c.is_ascii_digit()) {
                        return Err(ParseError {
                            line: l,
                            column: col,
                            kind: ParseErrorKind::Unexpected {
                                found: word,
                                expected: "an integer",
                            },
                        });
                    }
                    Tok::Int(word)
                } else if first.is_ascii_uppercase() || first == '_' {
                    Tok::Var(word)
                } else {
                    Tok::Ident(word)
                }
            }
            other => {
                return Err(ParseError {
                    line: l,
                    column: col,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column))
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.here();
        ParseError { line, column, kind }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(ParseErrorKind::Unexpected {
                found: t.to_string(),
                expected,
            }),
            None => self.error(ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut program = Program::default();
        while self.peek().is_some() {
            if self.peek() == Some(&Tok::Hash) {
                self.directive(&mut program)?;
            } else {
                program.clauses.push(self.clause()?);
            }
        }
        Ok(program)
    }

    fn directive(&mut self, program: &mut Program) -> Result<(), ParseError> {
        self.expect(Tok::Hash, "`#`")?;
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if name == "atom" => self.pos += 1,
            Some(Tok::Ident(name)) => {
                return Err(self.error(ParseErrorKind::UnknownDirective(name)));
            }
            _ => return Err(self.unexpected("a directive name")),
        }
        loop {
            let at = self.here();
            let atom = self.atom()?;
            if !atom.is_ground() {
                return Err(ParseError {
                    line: at.0,
                    column: at.1,
                    kind: ParseErrorKind::NonGroundDeclaration(atom.to_string()),
                });
            }
            program.declared.push(atom);
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Dot) => {
                    self.pos += 1;
                    return Ok(());
                }
                _ => return Err(self.unexpected("`,` or `.`")),
            }
        }
    }

    fn clause(&mut self) -> Result<Clause, ParseError> {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == "not") {
            return Err(self.error(ParseErrorKind::Reserved("not".into())));
        }
        let head = self.atom()?;
        let mut clause = Clause {
            head,
            positive: Vec::new(),
            negative: Vec::new(),
        };
        match self.peek() {
            Some(Tok::Dot) => {
                self.pos += 1;
                return Ok(clause);
            }
            Some(Tok::Neck) => self.pos += 1,
            _ => return Err(self.unexpected("`.` or `:-`")),
        }
        loop {
            let negated = matches!(self.peek(), Some(Tok::Ident(w)) if w == "not")
                && matches!(self.peek_at(1), Some(Tok::Ident(_)));
            if negated {
                self.pos += 1;
            } else if matches!(self.peek(), Some(Tok::Ident(w)) if w == "not") {
                return Err(self.error(ParseErrorKind::Reserved("not".into())));
            }
            let atom = self.atom()?;
            let body = if negated {
                &mut clause.negative
            } else {
                &mut clause.positive
            };
            if !body.contains(&atom) {
                body.push(atom);
            }
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Dot) => {
                    self.pos += 1;
                    return Ok(clause);
                }
                _ => return Err(self.unexpected("`,` or `.`")),
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let predicate = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                name
            }
            _ => return Err(self.unexpected("a predicate name")),
        };
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            loop {
                args.push(self.term()?);
                match self.peek() {
                    Some(Tok::Comma) => self.pos += 1,
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.unexpected("`,` or `)`")),
                }
            }
        }
        Ok(Atom { predicate, args })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let term = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                if self.peek_at(1) == Some(&Tok::LParen) {
                    return Err(self.error(ParseErrorKind::FunctionSymbol(name)));
                }
                Term::Const(name)
            }
            Some(Tok::Int(n)) => Term::Const(n),
            Some(Tok::Var(v)) => Term::Var(v),
            _ => return Err(self.unexpected("a constant or variable")),
        };
        self.pos += 1;
        Ok(term)
    }
}

/// Parses program text; see the module documentation for the syntax.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let toks = lex(text)?;
    let end = match text.lines().enumerate().last() {
        Some((i, l)) => (i + 1, l.chars().count() + 1),
        None => (1, 1),
    };
    Parser { toks, pos: 0, end }.program()
}

// ---------------------------------------------------------------------------
// Grounding

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundClause {
    pub head: AtomId,
    pub positive: Vec<AtomId>,
    pub negative: Vec<AtomId>,
}

#[derive(Clone, Debug)]
pub struct GroundProgram {
    base: Arc<Base>,
    clauses: Vec<GroundClause>,
}

impl GroundProgram {
    pub fn base(&self) -> &Arc<Base> {
        &self.base
    }

    pub fn clauses(&self) -> &[GroundClause] {
        &self.clauses
    }

    pub fn render_clause(&self, c: &GroundClause) -> String {
        let mut body: Vec<String> = c
            .positive
            .iter()
            .map(|&a| self.base.name(a).to_string())
            .collect();
        body.extend(
            c.negative
                .iter()
                .map(|&a| format!("not {}", self.base.name(a))),
        );
        if body.is_empty() {
            format!("{}.", self.base.name(c.head))
        } else {
            format!("{} :- {}.", self.base.name(c.head), body.join(", "))
        }
    }
}

impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{}", self.render_clause(c))?;
        }
        Ok(())
    }
}

/// Constants occurring anywhere in the program, sorted.
pub fn herbrand_universe(program: &Program) -> Vec<String> {
    let atoms = program
        .clauses
        .iter()
        .flat_map(|c| {
            std::iter::once(&c.head)
                .chain(&c.positive)
                .chain(&c.negative)
        })
        .chain(&program.declared);
    let set: BTreeSet<String> = atoms
        .flat_map(|a| &a.args)
        .filter_map(|t| match t {
            Term::Const(c) => Some(c.clone()),
            Term::Var(_) => None,
        })
        .collect();
    set.into_iter().collect()
}

fn instantiate(atom: &Atom, vars: &[String], values: &[&str]) -> String {
    if atom.args.is_empty() {
        return atom.predicate.clone();
    }
    let args: Vec<&str> = atom
        .args
        .iter()
        .map(|t| match t {
            Term::Const(c) => c.as_str(),
            Term::Var(v) => {
                values[vars
                    .iter()
                    .position(|x| x == v)
                    .expect("collected variable")]
            }
        })
        .collect();
    format!("{}({})", atom.predicate, args.join(","))
}

/// Expands every clause over all assignments of `constants` to its
/// variables and collects the Herbrand base.
pub fn ground_program(program: &Program, constants: &[String]) -> Result<GroundProgram, LpError> {
    let mut named: Vec<(String, Vec<String>, Vec<String>)> = Vec::new();
    for clause in &program.clauses {
        let vars: Vec<String> = clause.variables().into_iter().collect();
        if !vars.is_empty() && constants.is_empty() {
            return Err(LpError::NoConstants(render_source_clause(clause)));
        }
        let mut odometer = vec![0usize; vars.len()];
        loop {
            let values: Vec<&str> = odometer.iter().map(|&i| constants[i].as_str()).collect();
            let head = instantiate(&clause.head, &vars, &values);
            let pos = clause
                .positive
                .iter()
                .map(|a| instantiate(a, &vars, &values))
                .collect();
            let neg = clause
                .negative
                .iter()
                .map(|a| instantiate(a, &vars, &values))
                .collect();
            named.push((head, pos, neg));
            // advance
            let mut k = 0;
            while k < odometer.len() {
                odometer[k] += 1;
                if odometer[k] < constants.len() {
                    break;
                }
                odometer[k] = 0;
                k += 1;
            }
            if k == odometer.len() {
                break;
            }
        }
    }
    let names = named
        .iter()
        .flat_map(|(h, p, n)| std::iter::once(h).chain(p).chain(n).cloned())
        .chain(program.declared.iter().map(|a| a.to_string()));
    let base = Base::new(names);
    let id = |n: &String| base.id(n).expect("atom collected into base");
    let mut seen = HashSet::new();
    let mut clauses = Vec::new();
    for (h, p, n) in &named {
        let dedup = |v: &Vec<String>| {
            let mut ids: Vec<AtomId> = v.iter().map(id).collect();
            ids.sort();
            ids.dedup();
            ids
        };
        let gc = GroundClause {
            head: id(h),
            positive: dedup(p),
            negative: dedup(n),
        };
        if seen.insert(gc.clone()) {
            clauses.push(gc);
        }
    }
    Ok(GroundProgram { base, clauses })
}

fn render_source_clause(c: &Clause) -> String {
    let mut body: Vec<String> = c.positive.iter().map(ToString::to_string).collect();
    body.extend(c.negative.iter().map(|a| format!("not {a}")));
    if body.is_empty() {
        format!("{}.", c.head)
    } else {
        format!("{} :- {}.", c.head, body.join(", "))
    }
}

/// Parses and grounds over the program's own constants.
pub fn load_program(text: &str) -> Result<GroundProgram, LpError> {
    let program = parse_program(text)?;
    let constants = herbrand_universe(&program);
    ground_program(&program, &constants)
}

// ---------------------------------------------------------------------------
// Levels, T_P and supported models

/// Levels from longest dependency paths: `l(A) = 0` for atoms with no body
/// atoms below them, otherwise one more than the highest body atom of any
/// clause for `A`. Fails with a witness cycle when the dependency graph
/// (positive and negative edges alike) is cyclic.
pub fn infer_level_mapping(program: &GroundProgram) -> Result<LevelMap, LpError> {
    let n = program.base.len();
    let mut deps: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in &program.clauses {
        let h = c.head.0 as usize;
        deps[h].extend(c.positive.iter().chain(&c.negative).map(|a| a.0 as usize));
    }
    for d in &mut deps {
        d.sort_unstable();
        d.dedup();
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; n];
    let mut level = vec![0u32; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // (node, next dependency index)
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        mark[root] = Mark::Open;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&dep) = deps[node].get(*next) {
                *next += 1;
                match mark[dep] {
                    Mark::New => {
                        mark[dep] = Mark::Open;
                        stack.push((dep, 0));
                    }
                    Mark::Open => {
                        let start = stack
                            .iter()
                            .position(|&(v, _)| v == dep)
                            .expect("open node on stack");
                        // stack runs head -> body; report body -> head
                        let cycle = stack[start..]
                            .iter()
                            .rev()
                            .map(|&(v, _)| program.base.name(AtomId(v as u32)).to_string())
                            .collect();
                        return Err(LpError::NotLocallyHierarchical { cycle });
                    }
                    Mark::Done => {}
                }
            } else {
                level[node] = deps[node].iter().map(|&d| level[d] + 1).max().unwrap_or(0);
                mark[node] = Mark::Done;
                stack.pop();
            }
        }
    }
    Ok(LevelMap::from_base(Arc::clone(&program.base), level)?)
}

/// `T_P(I) = {head | positive body ⊆ I and negative body ∩ I = ∅}`.
pub fn tp(program: &GroundProgram, interp: &Interpretation) -> Result<Interpretation, LpError> {
    if !program.base.owns(interp) {
        return Err(HerbrandError::BaseMismatch.into());
    }
    Ok(program.base.interpretation_from_ids(
        program
            .clauses
            .iter()
            .filter(|c| {
                c.positive.iter().all(|&a| interp.contains(a))
                    && c.negative.iter().all(|&a| !interp.contains(a))
            })
            .map(|c| c.head),
    ))
}

/// `T_P` as an endofunction on the interpretations of the program's base.
pub fn tp_endofunction(program: &Arc<GroundProgram>) -> Endofunction<Interpretation> {
    let program = Arc::clone(program);
    Endofunction::new("T_P", move |i: &Interpretation| {
        tp(&program, i).expect("interpretation over the program's base")
    })
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub levels: LevelMap,
    pub fix: FixResult<Interpretation>,
}

impl LpSolution {
    pub fn model(&self) -> &Interpretation {
        &self.fix.fixed_point
    }

    pub fn space(&self) -> HerbrandSpace {
        HerbrandSpace::new(self.levels.clone())
    }
}

/// Default stage budget: a locally hierarchical program settles at least one
/// more level per stage.
pub fn default_budget(levels: &LevelMap) -> usize {
    levels.alpha() as usize + levels.base().len() + 2
}

/// Solves for the supported model by iterating from the empty
/// interpretation. `budget` defaults to [`default_budget`].
pub fn solve_supported_model(
    program: &GroundProgram,
    budget: Option<usize>,
) -> Result<LpSolution, LpError> {
    let levels = infer_level_mapping(program)?;
    let space = HerbrandSpace::new(levels.clone());
    let f = tp_endofunction(&Arc::new(program.clone()));
    let config = SolveConfig::with_budget(budget.unwrap_or_else(|| default_budget(&levels)));
    let fix = solve_fixed_point(&space, &f, &program.base.empty_interpretation(), config)
        .map_err(|e| LpError::Solver(Box::new(e)))?;
    Ok(LpSolution { levels, fix })
}

/// The unique supported model of a locally hierarchical program.
pub fn supported_model(program: &GroundProgram) -> Result<Interpretation, LpError> {
    Ok(solve_supported_model(program, None)?.fix.fixed_point)
}

/// Every `I` with `T_P(I) = I`, by enumerating all subsets of the base.
pub fn brute_force_supported_models(
    program: &GroundProgram,
) -> Result<Vec<Interpretation>, LpError> {
    let n = program.base.len();
    if n > 20 {
        return Err(LpError::BaseTooLarge(n));
    }
    let mut models = Vec::new();
    for mask in 0..1u64 << n {
        let i = program.base.interpretation_from_mask(mask);
        if tp(program, &i)? == i {
            models.push(i);
        }
    }
    Ok(models)
}

/// Text of a random locally hierarchical ground program over atoms
/// `a0..a{n-1}`.
///
/// Atoms are placed in a random order; each atom either becomes a fact, gets
/// one or two clauses whose bodies draw from atoms earlier in the order with
/// random polarity, or is only declared. All atoms are declared, so the base
/// always has exactly `n_atoms` atoms.
pub fn random_lh_program(rng: &mut dyn RngCore, n_atoms: usize) -> String {
    let mut order: Vec<usize> = (0..n_atoms).collect();
    for i in (1..order.len()).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let name = |i: usize| format!("a{}", order[i]);
    let mut text = String::new();
    if n_atoms > 0 {
        let all: Vec<String> = (0..n_atoms).map(|i| format!("a{i}")).collect();
        text.push_str(&format!("#atom {}.\n", all.join(", ")));
    }
    for pos in 0..n_atoms {
        let roll = rng.random_range(0..10);
        if pos == 0 || roll < 2 {
            if rng.random_bool(0.6) {
                text.push_str(&format!("{}.\n", name(pos)));
            }
            continue;
        }
        if roll == 2 {
            continue;
        }
        let n_clauses = rng.random_range(1..=2);
        for _ in 0..n_clauses {
            let width = rng.random_range(1..=3.min(pos));
            let mut body = Vec::new();
            for _ in 0..width {
                let b = rng.random_range(0..pos);
                let lit = if rng.random_bool(0.5) {
                    name(b)
                } else {
                    format!("not {}", name(b))
                };
                if !body.contains(&lit) {
                    body.push(lit);
                }
            }
            text.push_str(&format!("{} :- {}.\n", name(pos), body.join(", ")));
        }
    }
    text
}
