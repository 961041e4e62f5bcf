use std::collections::BTreeSet;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use anaprop::algebra::{eval, Counting, FiniteAlgebra, Item, TermAlgebra, WordPattern};
use anaprop::antiunify::{bounded_gens, common_gens, mgg, solve_nmul_bounded};
use anaprop::closed_form::{
    decide_mono_add, decide_mono_mul_field, decide_mono_mul_natural, decide_mono_word, decide_sy_word, solve_mono_add, sy_witness_rule,
    solve_mono_mul_field, solve_mono_mul_natural, solve_mono_word, Factorization, WordFactorization,
};
use anaprop::decider::{verify_characteristic, verify_characteristic_proportion, Decider, Reason, Verdict, DEFAULT_STATE_CAP};
use anaprop::oracle::Oracle;
use anaprop::terms::{parse_term, RewriteRule, Symbol, Term, Var};
use anaprop::tree::{check_tree_arrow, check_tree_proportion, lgg, solve_tree_equation, PairVariableMap};
use anaprop::{Error, IntAdd, Integer, NatMul, Natural, RatMul, Rational, Result};

use crate::preset::{signature_term, Preset};
use crate::report::{Record, Solution, Status};

#[derive(Parser, Debug)]
#[command(name = "anaprop", version, about = "Decide and solve analogical proportions a:b::c:d")]
pub struct Cli {
    /// Output format: plain text, or one JSON record per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Auto,
    ClosedForm,
    Automata,
    Oracle,
    Search,
}

/// Occurrence bound `ℓ`: a number, or `inf`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Occurrences {
    Bounded(usize),
    Unbounded,
}

impl FromStr for Occurrences {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "inf" | "∞" | "unbounded" => Ok(Occurrences::Unbounded),
            _ => s
                .parse()
                .map(Occurrences::Bounded)
                .map_err(|_| format!("`{s}` is neither a number nor `inf`")),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// zplus, qmul, nmul, word:<letters>, term:<signature> or file:<path>
    #[arg(long)]
    pub algebra: String,
    /// Algebra holding c and d; defaults to --algebra
    #[arg(long)]
    pub algebra2: Option<String>,
    /// Admit the empty word (A* instead of A+)
    #[arg(long)]
    pub allow_empty: bool,
    /// Words and patterns are whitespace-separated symbols
    #[arg(long)]
    pub tokens: bool,
}

#[derive(Args, Debug, Clone)]
pub struct FragmentArgs {
    /// Number of variables a justification may use
    #[arg(long)]
    pub k: Option<usize>,
    /// Occurrences allowed per variable (a number or `inf`)
    #[arg(long)]
    pub l: Option<Occurrences>,
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    pub engine: Engine,
    /// Term depth for the oracle engine
    #[arg(long)]
    pub depth: Option<usize>,
    /// Behavior-state limit for the automata engine
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide a:b::c:d
    #[command(allow_negative_numbers = true)]
    Decide {
        a: String,
        b: String,
        c: String,
        d: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        fragment: FragmentArgs,
    },
    /// Solve a:b::c:x
    #[command(allow_negative_numbers = true)]
    Solve {
        a: String,
        b: String,
        c: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        fragment: FragmentArgs,
    },
    /// List every proportion over a pair of finite algebras
    Enumerate {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        fragment: FragmentArgs,
    },
    /// Least general generalization of two terms
    Lgg { p: String, q: String },
    /// Solutions of p→q :· r→x in the term algebra
    SolveTree { p: String, q: String, r: String },
    /// Sufficient check of p:q::r:u (or of the arrow) in the term algebra
    CheckTree {
        p: String,
        q: String,
        r: String,
        u: String,
        #[arg(long)]
        arrow: bool,
    },
    /// Common and minimally general generalizations of two elements
    Antiunify {
        a: String,
        b: String,
        #[arg(long, default_value = "nmul")]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Whether "s -> t" is a characteristic justification of a→b :· c→d
    #[command(allow_negative_numbers = true)]
    CheckRule {
        rule: String,
        a: String,
        b: String,
        c: String,
        d: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Check the four-arrow proportion form instead of the single arrow
        #[arg(long)]
        proportion: bool,
    },
}

/// A record together with its plain-text rendering.
struct Output {
    record: Record,
    text: String,
}

/// Parses `argv` (program name first), runs the query and writes the report.
/// Returns the process exit status: 0 on success, 2 on input errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(outputs) => {
            for o in outputs {
                let line = match cli.format {
                    Format::Text => o.text,
                    Format::Json => o.record.to_line(),
                };
                let _ = writeln!(out, "{line}");
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(command: Command) -> Result<Vec<Output>> {
    match command {
        Command::Decide {
            a,
            b,
            c,
            d,
            algebra,
            fragment,
        } => decide([a, b, c, d], &algebra, &fragment).map(|o| vec![o]),
        Command::Solve {
            a,
            b,
            c,
            algebra,
            fragment,
        } => solve([a, b, c], &algebra, &fragment),
        Command::Enumerate { algebra, fragment } => enumerate(&algebra, &fragment),
        Command::Lgg { p, q } => {
            let (p, q) = (parse_term(&p)?, parse_term(&q)?);
            let mut chi = PairVariableMap::avoiding([&p, &q]);
            let term = lgg(&p, &q, &mut chi);
            Ok(vec![Output {
                text: term.to_string(),
                record: Record::Term { term },
            }])
        }
        Command::SolveTree { p, q, r } => {
            let terms: Vec<Term> = solve_tree_equation(&parse_term(&p)?, &parse_term(&q)?, &parse_term(&r)?)
                .into_iter()
                .collect();
            let text = terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n");
            Ok(vec![Output {
                text,
                record: Record::Terms { terms },
            }])
        }
        Command::CheckTree { p, q, r, u, arrow } => {
            let query = vec![p, q, r, u];
            let [p, q, r, u] = [0, 1, 2, 3].map(|i| parse_term(&query[i]));
            let (p, q, r, u) = (p?, q?, r?, u?);
            let ok = if arrow {
                check_tree_arrow(&p, &q, &r, &u)
            } else {
                check_tree_proportion(&p, &q, &r, &u)
            };
            let (status, detail) = if ok {
                (Status::Holds, "holds (the generalizations share their fresh variables)".to_string())
            } else {
                (
                    Status::Undetermined,
                    "undetermined (the fresh-variable condition fails; it is only sufficient)".to_string(),
                )
            };
            Ok(vec![verdict_output(query, "tree", status, None, None, detail)])
        }
        Command::Antiunify {
            a,
            b,
            algebra,
            k,
            depth,
        } => antiunify(&a, &b, &algebra, k, depth).map(|o| vec![o]),
        Command::CheckRule {
            rule,
            a,
            b,
            c,
            d,
            algebra,
            proportion,
        } => check_rule(&rule, [a, b, c, d], &algebra, proportion).map(|o| vec![o]),
    }
}

fn verdict_output(
    query: Vec<String>,
    engine: &str,
    status: Status,
    reason: Option<Reason>,
    witness: Option<RewriteRule>,
    detail: String,
) -> Output {
    Output {
        text: detail.clone(),
        record: Record::Verdict {
            query,
            engine: engine.into(),
            status,
            reason,
            arrow: None,
            witness,
            detail,
        },
    }
}

enum Algebras {
    Builtin(Preset),
    Finite(FiniteAlgebra, FiniteAlgebra),
}

fn load(args: &AlgebraArgs) -> Result<Algebras> {
    let first = Preset::load(&args.algebra, args.allow_empty, args.tokens)?;
    let second = match &args.algebra2 {
        Some(spec) => Some(Preset::load(spec, args.allow_empty, args.tokens)?),
        None => None,
    };
    match (first, second) {
        (Preset::Finite(a), None) => Ok(Algebras::Finite(a.clone(), a)),
        (Preset::Finite(a), Some(Preset::Finite(b))) => Ok(Algebras::Finite(a, b)),
        (p, None) => Ok(Algebras::Builtin(p)),
        (p, Some(q)) if !matches!(p, Preset::Finite(_)) && args.algebra2.as_deref() == Some(args.algebra.as_str()) => {
            let _ = q;
            Ok(Algebras::Builtin(p))
        }
        _ => Err(Error::Unsupported("--algebra2 must name a finite algebra file when --algebra does".into())),
    }
}

/// The fragment requested for a builtin algebra. Without `--k`/`--l`,
/// number and word algebras default to the monolinear fragment except
/// (ℕ₂,·,ℕ₂), which uses the bounded full-framework search.
#[derive(Debug, PartialEq, Eq)]
enum Fragment {
    Monolinear,
    Full,
}

fn builtin_fragment(p: &Preset, f: &FragmentArgs) -> Result<Fragment> {
    match (f.k, f.l) {
        (Some(1), Some(Occurrences::Bounded(1))) => Ok(Fragment::Monolinear),
        (None, None) if matches!(p, Preset::NMul) => Ok(Fragment::Full),
        (None, None) => Ok(Fragment::Monolinear),
        (None, Some(Occurrences::Unbounded)) if matches!(p, Preset::NMul | Preset::Word { .. }) => Ok(Fragment::Full),
        _ => Err(Error::Unsupported(format!(
            "the {} preset supports the monolinear fragment (--k 1 --l 1){}",
            p.name(),
            match p {
                Preset::NMul => " and the bounded full-framework search (no --k/--l, or --l inf)",
                Preset::Word { .. } => " and a sufficient full-framework check (--l inf)",
                _ => "",
            }
        ))),
    }
}

fn finite_fragment(f: &FragmentArgs) -> (usize, Option<usize>) {
    let l = match f.l {
        Some(Occurrences::Bounded(n)) => Some(n),
        _ => None,
    };
    (f.k.unwrap_or(1), l)
}

fn check_engine(engine: Engine, allowed: &[Engine], what: &str) -> Result<()> {
    if engine == Engine::Auto || allowed.contains(&engine) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "engine {} is not available for {what}",
            engine.to_possible_value().expect("no skipped engines").get_name()
        )))
    }
}

fn number_error(s: &str, what: &str) -> Error {
    Error::Parse {
        offset: 0,
        message: format!("`{s}` is not {what}"),
    }
}

fn int(s: &str) -> Result<Integer> {
    s.parse().map_err(|_| number_error(s, "an integer"))
}

fn rat(s: &str) -> Result<Rational> {
    s.parse().map_err(|_| number_error(s, "a rational number"))
}

fn nat(s: &str) -> Result<Natural> {
    match s.parse::<Natural>() {
        Ok(n) if n >= Natural::from(2u8) => Ok(n),
        _ => Err(number_error(s, "a natural number ≥ 2")),
    }
}

fn small_nat(s: &str) -> Result<u64> {
    let n = nat(s)?;
    u64::try_from(&n).map_err(|_| Error::Unsupported(format!("{s} exceeds the 64-bit search range")))
}

fn show_word(w: &[Symbol], tokens: bool) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    let parts: Vec<&str> = w.iter().map(|s| s.as_str()).collect();
    parts.join(if tokens { " " } else { "" })
}

fn paren_neg(s: String) -> String {
    if s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

/// `k·x → ℓ·x` from a factorization; a factor of 1 is dropped.
fn scaling_rule<T: ToString>(f: &Factorization<T>) -> Result<RewriteRule> {
    let side = |c: &T| {
        let c = c.to_string();
        if c == "1" {
            Term::var(1)
        } else {
            Term::app("*", vec![Term::constant(&c), Term::var(1)])
        }
    };
    RewriteRule::new(side(&f.k), side(&f.l))
}

/// `a1 x a3 → b1 x b3`, with `x` taking `a2` and `b2`.
fn word_rule(f: &WordFactorization<Symbol>) -> Result<RewriteRule> {
    let side = |l: &[Symbol], r: &[Symbol]| {
        let mut items: Vec<Item> = l.iter().cloned().map(Item::Letter).collect();
        items.push(Item::Var(Var(1)));
        items.extend(r.iter().cloned().map(Item::Letter));
        WordPattern(items).to_term()
    };
    RewriteRule::new(side(&f.a1, &f.a3), side(&f.b1, &f.b3))
}

fn factorization_text<T: ToString>(f: &Factorization<T>) -> String {
    format!(
        "a = k·o, b = ℓ·o, c = k·u, d = ℓ·u with k = {}, ℓ = {}, o = {}, u = {}",
        f.k.to_string(),
        f.l.to_string(),
        f.o.to_string(),
        f.u.to_string()
    )
}

fn decide(q: [String; 4], args: &AlgebraArgs, frag: &FragmentArgs) -> Result<Output> {
    let query = q.to_vec();
    match load(args)? {
        Algebras::Finite(a, b) => decide_finite(&q, &a, &b, frag),
        Algebras::Builtin(p) => {
            if let Preset::Term(sig) = &p {
                check_engine(frag.engine, &[Engine::ClosedForm], "term algebras")?;
                let t: Vec<Term> = q.iter().map(|s| signature_term(sig, s)).collect::<Result<_>>()?;
                let (status, detail) = if check_tree_proportion(&t[0], &t[1], &t[2], &t[3]) {
                    (Status::Holds, "holds (the generalizations share their fresh variables)".to_string())
                } else {
                    (
                        Status::Undetermined,
                        "undetermined (the fresh-variable condition fails; it is only sufficient)".to_string(),
                    )
                };
                return Ok(verdict_output(query, "tree", status, None, None, detail));
            }
            let fragment = builtin_fragment(&p, frag)?;
            if let (Fragment::Full, Preset::Word { algebra, tokens }) = (&fragment, &p) {
                check_engine(frag.engine, &[Engine::ClosedForm], "the full framework over words")?;
                let w: Vec<Vec<Symbol>> = q.iter().map(|s| algebra.parse_word(s, *tokens)).collect::<Result<_>>()?;
                let witness = match decide_sy_word(&w[0], &w[1], &w[2], &w[3], algebra.allows_empty()) {
                    Some(f) if f.is_letterwise() => {
                        let rule = sy_witness_rule(&w[0], &w[1], &w[2], &w[3])?;
                        let (a, b, c, d) = (&w[0], &w[1], &w[2], &w[3]);
                        verify_characteristic_proportion(&rule, a, b, c, d, algebra, algebra)?.then_some(rule)
                    }
                    _ => None,
                };
                return Ok(match witness {
                    Some(rule) => {
                        let detail = format!("holds (characteristic justification {})", p.show_rule(&rule));
                        verdict_output(query, "closed-form", Status::Holds, None, Some(rule), detail)
                    }
                    None => verdict_output(
                        query,
                        "closed-form",
                        Status::Undetermined,
                        None,
                        None,
                        "undetermined (no letterwise aligned witness rule)".into(),
                    ),
                });
            }
            if fragment == Fragment::Full {
                check_engine(frag.engine, &[Engine::Search], "the full framework over nmul")?;
                let [a, b, c, d] = [0, 1, 2, 3].map(|i| small_nat(&q[i]));
                let (a, b, c, d) = (a?, b?, c?, d?);
                let found = solve_nmul_bounded(a, b, c)?.into_iter().find(|(x, _)| *x == d);
                return Ok(match found {
                    Some((_, rules)) => {
                        let detail = format!("holds (characteristic justification {})", p.show_rule(&rules[0]));
                        verdict_output(query, "search", Status::Holds, None, Some(rules[0].clone()), detail)
                    }
                    None => verdict_output(
                        query,
                        "search",
                        Status::Undetermined,
                        None,
                        None,
                        "undetermined (no characteristic justification within the monomial search bounds)".into(),
                    ),
                });
            }
            check_engine(frag.engine, &[Engine::ClosedForm], "builtin algebras")?;
            let (status, witness, detail) = match &p {
                Preset::ZPlus => {
                    let [a, b, c, d] = [0, 1, 2, 3].map(|i| int(&q[i]));
                    let (a, b, c, d) = (a?, b?, c?, d?);
                    let shown = |x: &Integer| paren_neg(x.to_string());
                    if decide_mono_add(&a, &b, &c, &d) {
                        let rule = solve_mono_add(&a, &b, &c).1;
                        let text = format!(
                            "holds (difference proportion: {}−{} = {}−{})",
                            a,
                            shown(&b),
                            shown(&c),
                            shown(&d)
                        );
                        (Status::Holds, Some(rule), text)
                    } else {
                        let text = format!("fails ({}−{} ≠ {}−{})", a, shown(&b), shown(&c), shown(&d));
                        (Status::Fails, None, text)
                    }
                }
                Preset::QMul | Preset::NMul => {
                    let f = if matches!(p, Preset::QMul) {
                        let [a, b, c, d] = [0, 1, 2, 3].map(|i| rat(&q[i]));
                        let (a, b, c, d) = (a?, b?, c?, d?);
                        decide_mono_mul_field(&a, &b, &c, &d).map(|f| Factorization {
                            k: f.k.to_string(),
                            l: f.l.to_string(),
                            o: f.o.to_string(),
                            u: f.u.to_string(),
                        })
                    } else {
                        let [a, b, c, d] = [0, 1, 2, 3].map(|i| nat(&q[i]));
                        let (a, b, c, d) = (a?, b?, c?, d?);
                        decide_mono_mul_natural(&a, &b, &c, &d).map(|f| Factorization {
                            k: f.k.to_string(),
                            l: f.l.to_string(),
                            o: f.o.to_string(),
                            u: f.u.to_string(),
                        })
                    };
                    match f {
                        Some(f) => (
                            Status::Holds,
                            Some(scaling_rule(&f)?),
                            format!("holds (geometric proportion: {})", factorization_text(&f)),
                        ),
                        None => (
                            Status::Fails,
                            None,
                            "fails (no factorization a = k·o, b = ℓ·o, c = k·u, d = ℓ·u)".into(),
                        ),
                    }
                }
                Preset::Word { algebra, tokens } => {
                    let w: Vec<Vec<Symbol>> = q.iter().map(|s| algebra.parse_word(s, *tokens)).collect::<Result<_>>()?;
                    match decide_mono_word(&w[0], &w[1], &w[2], &w[3]) {
                        Some(f) => {
                            let s = |x: &[Symbol]| show_word(x, *tokens);
                            let text = format!(
                                "holds (a = {}|{}|{}, b = {}|{}|{}, c = {}|{}|{}, d = {}|{}|{})",
                                s(&f.a1),
                                s(&f.a2),
                                s(&f.a3),
                                s(&f.b1),
                                s(&f.a2),
                                s(&f.b3),
                                s(&f.a1),
                                s(&f.b2),
                                s(&f.a3),
                                s(&f.b1),
                                s(&f.b2),
                                s(&f.b3)
                            );
                            (Status::Holds, Some(word_rule(&f)?), text)
                        }
                        None => (
                            Status::Fails,
                            None,
                            "fails (no split a = a1 a2 a3, b = b1 a2 b3, c = a1 b2 a3, d = b1 b2 b3)".into(),
                        ),
                    }
                }
                Preset::Term(_) | Preset::Finite(_) => unreachable!("handled above"),
            };
            Ok(verdict_output(query, "closed-form", status, None, witness, detail))
        }
    }
}

/// One of the two finite engines, with the proportion queries both expose.
enum FiniteEngine {
    Automata(Box<Decider>),
    Oracle(Box<Oracle>, usize),
}

impl FiniteEngine {
    fn new(a: &FiniteAlgebra, b: &FiniteAlgebra, frag: &FragmentArgs) -> Result<Self> {
        check_engine(frag.engine, &[Engine::Automata, Engine::Oracle], "finite algebras")?;
        let (k, l) = finite_fragment(frag);
        if frag.engine == Engine::Oracle {
            let depth = frag.depth.unwrap_or(6);
            return Ok(FiniteEngine::Oracle(Box::new(Oracle::new(a, b, k, l, depth)?), depth));
        }
        Ok(FiniteEngine::Automata(Box::new(Decider::with_cap(a, b, k, l, frag.cap)?)))
    }

    fn name(&self) -> String {
        match self {
            FiniteEngine::Automata(_) => "automata".into(),
            FiniteEngine::Oracle(o, depth) if o.is_exact() => format!("oracle (exact at depth {depth})"),
            FiniteEngine::Oracle(_, depth) => format!("oracle (approximate at depth {depth})"),
        }
    }

    fn decide(&self, q: [usize; 4]) -> Verdict {
        match self {
            FiniteEngine::Automata(d) => d.decide_proportion(q[0], q[1], q[2], q[3]),
            FiniteEngine::Oracle(o, _) => o.decide_proportion(q[0], q[1], q[2], q[3]),
        }
    }

    fn solve(&self, a: usize, b: usize, c: usize) -> Vec<usize> {
        match self {
            FiniteEngine::Automata(d) => d.solve(a, b, c),
            FiniteEngine::Oracle(o, _) => o.solve(a, b, c),
        }
    }
}

fn indices(q: &[String], a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Vec<usize>> {
    q.iter()
        .enumerate()
        .map(|(i, s)| if i < 2 { a.index_of(s) } else { b.index_of(s) })
        .collect()
}

fn verdict_text(v: &Verdict, q: [usize; 4], a: &FiniteAlgebra, b: &FiniteAlgebra) -> String {
    let label = |i: usize, side: usize| if side == 0 { a.label(q[i]) } else { b.label(q[i]) };
    let arrows = [
        (0, 1, 2, 3, 0),
        (1, 0, 3, 2, 0),
        (2, 3, 0, 1, 1),
        (3, 2, 1, 0, 1),
    ];
    let (x, y, z, w, side) = arrows[v.arrow];
    let arrow = format!(
        "{}→{} :· {}→{}",
        label(x, side),
        label(y, side),
        label(z, 1 - side),
        label(w, 1 - side)
    );
    match &v.reason {
        Reason::AllTrivial => "holds (every justification of both arrows is trivial)".into(),
        Reason::Maximal => match &v.witness {
            Some(r) => format!("holds (maximal shared justifications, e.g. {r})"),
            None => "holds (maximal shared justifications)".into(),
        },
        Reason::NotMaximal { better } => {
            let better = if side == 0 { b.label(*better) } else { a.label(*better) };
            format!("fails ({arrow}: the shared justifications are strictly contained in those for {better})")
        }
        Reason::EmptyIntersection => format!("fails ({arrow}: no shared nontrivial justification)"),
    }
}

fn decide_finite(q: &[String; 4], a: &FiniteAlgebra, b: &FiniteAlgebra, frag: &FragmentArgs) -> Result<Output> {
    let ix = indices(q, a, b)?;
    let ix = [ix[0], ix[1], ix[2], ix[3]];
    let engine = FiniteEngine::new(a, b, frag)?;
    let v = engine.decide(ix);
    let text = verdict_text(&v, ix, a, b);
    Ok(Output {
        text: text.clone(),
        record: Record::Verdict {
            query: q.to_vec(),
            engine: engine.name(),
            status: if v.holds { Status::Holds } else { Status::Fails },
            reason: Some(v.reason),
            arrow: Some(v.arrow),
            witness: v.witness,
            detail: text,
        },
    })
}

fn solutions_output(query: Vec<String>, engine: &str, complete: bool, solutions: Vec<Solution>, show: &dyn Fn(&RewriteRule) -> String) -> Vec<Output> {
    let values: Vec<&str> = solutions.iter().map(|s| s.value.as_str()).collect();
    let mut text = format!("{{{}}}", values.join(", "));
    for s in &solutions {
        for w in &s.witnesses {
            text.push_str(&format!("\n  {} via {}", s.value, show(w)));
        }
    }
    if !complete {
        text.push_str("\n  (bounded search: further solutions may exist)");
    }
    vec![Output {
        text,
        record: Record::Solutions {
            query,
            engine: engine.into(),
            complete,
            solutions,
        },
    }]
}

fn solve(q: [String; 3], args: &AlgebraArgs, frag: &FragmentArgs) -> Result<Vec<Output>> {
    let query = q.to_vec();
    let sol = |value: String, witnesses: Vec<RewriteRule>| Solution { value, witnesses };
    match load(args)? {
        Algebras::Finite(a, b) => {
            let ix = indices(&q, &a, &b)?;
            let engine = FiniteEngine::new(&a, &b, frag)?;
            let found: Vec<Solution> = engine
                .solve(ix[0], ix[1], ix[2])
                .into_iter()
                .map(|d| {
                    let v = engine.decide([ix[0], ix[1], ix[2], d]);
                    sol(b.label(d).to_string(), v.witness.into_iter().collect())
                })
                .collect();
            Ok(solutions_output(query, &engine.name(), true, found, &|r| r.to_string()))
        }
        Algebras::Builtin(p) => {
            let show = |r: &RewriteRule| p.show_rule(r);
            if let Preset::Term(sig) = &p {
                check_engine(frag.engine, &[Engine::ClosedForm], "term algebras")?;
                let t: Vec<Term> = q.iter().map(|s| signature_term(sig, s)).collect::<Result<_>>()?;
                let found = solve_tree_equation(&t[0], &t[1], &t[2])
                    .into_iter()
                    .map(|x| sol(x.to_string(), vec![]))
                    .collect();
                return Ok(solutions_output(query, "tree-arrow", true, found, &show));
            }
            let fragment = builtin_fragment(&p, frag)?;
            if fragment == Fragment::Full && !matches!(p, Preset::NMul) {
                return Err(Error::Unsupported("solving in the full framework is only available for nmul".into()));
            }
            if fragment == Fragment::Full {
                check_engine(frag.engine, &[Engine::Search], "the full framework over nmul")?;
                let [a, b, c] = [0, 1, 2].map(|i| small_nat(&q[i]));
                let found = solve_nmul_bounded(a?, b?, c?)?
                    .into_iter()
                    .map(|(d, rules)| sol(d.to_string(), rules))
                    .collect();
                return Ok(solutions_output(query, "search", false, found, &show));
            }
            check_engine(frag.engine, &[Engine::ClosedForm], "builtin algebras")?;
            let found = match &p {
                Preset::ZPlus => {
                    let (d, rule) = solve_mono_add(&int(&q[0])?, &int(&q[1])?, &int(&q[2])?);
                    vec![sol(d.to_string(), vec![rule])]
                }
                Preset::QMul => {
                    let (a, b, c) = (rat(&q[0])?, rat(&q[1])?, rat(&q[2])?);
                    let d = solve_mono_mul_field(&a, &b, &c)?;
                    let witness = decide_mono_mul_field(&a, &b, &c, &d).map(|f| scaling_rule(&f)).transpose()?;
                    vec![sol(d.to_string(), witness.into_iter().collect())]
                }
                Preset::NMul => {
                    let (a, b, c) = (nat(&q[0])?, nat(&q[1])?, nat(&q[2])?);
                    solve_mono_mul_natural(&a, &b, &c)
                        .into_iter()
                        .map(|d| {
                            let witness = decide_mono_mul_natural(&a, &b, &c, &d).map(|f| scaling_rule(&f)).transpose()?;
                            Ok(sol(d.to_string(), witness.into_iter().collect()))
                        })
                        .collect::<Result<_>>()?
                }
                Preset::Word { algebra, tokens } => {
                    let w: Vec<Vec<Symbol>> = q.iter().map(|s| algebra.parse_word(s, *tokens)).collect::<Result<_>>()?;
                    solve_mono_word(&w[0], &w[1], &w[2])
                        .into_iter()
                        .filter(|d| algebra.check_word(d).is_ok())
                        .map(|d| {
                            let witness = decide_mono_word(&w[0], &w[1], &w[2], &d).map(|f| word_rule(&f)).transpose()?;
                            Ok(sol(show_word(&d, *tokens), witness.into_iter().collect()))
                        })
                        .collect::<Result<_>>()?
                }
                Preset::Term(_) | Preset::Finite(_) => unreachable!("handled above"),
            };
            Ok(solutions_output(query, "closed-form", true, found, &show))
        }
    }
}

fn enumerate(args: &AlgebraArgs, frag: &FragmentArgs) -> Result<Vec<Output>> {
    let Algebras::Finite(a, b) = load(args)? else {
        return Err(Error::Unsupported("enumerate needs finite algebras".into()));
    };
    let engine = FiniteEngine::new(&a, &b, frag)?;
    let mut out = Vec::new();
    let quads: Vec<[usize; 4]> = match &engine {
        FiniteEngine::Automata(d) => d.enumerate_all(),
        FiniteEngine::Oracle(..) => {
            let (n, m) = (a.size(), b.size());
            let mut v = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..m {
                        for w in 0..m {
                            if engine.decide([x, y, z, w]).holds {
                                v.push([x, y, z, w]);
                            }
                        }
                    }
                }
            }
            v
        }
    };
    for q in quads {
        let v = engine.decide(q);
        let elements = [a.label(q[0]), a.label(q[1]), b.label(q[2]), b.label(q[3])].map(String::from);
        out.push(Output {
            text: format!("{}:{}::{}:{}", elements[0], elements[1], elements[2], elements[3]),
            record: Record::Proportion {
                elements,
                witness: v.witness,
            },
        });
    }
    Ok(out)
}

/// Values of `t` over every assignment of its variables.
fn image(t: &Term, alg: &FiniteAlgebra) -> Result<BTreeSet<usize>> {
    let vars: Vec<Var> = t.vars().into_iter().collect();
    alg.assignments(&vars).map(|al| eval(t, &al, alg)).collect()
}

fn antiunify(a: &str, b: &str, spec: &str, k: usize, depth: usize) -> Result<Output> {
    let (common, minimal) = match Preset::load(spec, false, false)? {
        Preset::NMul => {
            let (x, y) = (small_nat(a)?, small_nat(b)?);
            let show = |s: std::collections::BTreeSet<anaprop::antiunify::Monomial>| -> Vec<String> {
                s.iter().map(|m| m.to_string()).collect()
            };
            (show(common_gens(x, y)?), show(mgg(x, y)?))
        }
        Preset::Finite(alg) => {
            let (x, y) = (alg.index_of(a)?, alg.index_of(b)?);
            let shared: Vec<Term> = bounded_gens(x, &alg, k, depth)?
                .intersection(&bounded_gens(y, &alg, k, depth)?)
                .cloned()
                .collect();
            let images: Vec<BTreeSet<usize>> = shared.iter().map(|t| image(t, &alg)).collect::<Result<_>>()?;
            let minimal = shared
                .iter()
                .zip(&images)
                .filter(|(_, im)| !images.iter().any(|other| other.len() < im.len() && other.is_subset(im)))
                .map(|(t, _)| t.to_string())
                .collect();
            (shared.iter().map(|t| t.to_string()).collect(), minimal)
        }
        other => {
            return Err(Error::Unsupported(format!(
                "antiunify supports nmul and finite algebra files, not {}",
                other.name()
            )))
        }
    };
    let text = format!("common: {{{}}}\nminimal: {{{}}}", common.join(", "), minimal.join(", "));
    Ok(Output {
        text,
        record: Record::Generalizations {
            a: a.into(),
            b: b.into(),
            common,
            minimal,
        },
    })
}

fn characteristic<A, B>(rule: &RewriteRule, e: [&A::Elem; 2], f: [&B::Elem; 2], alg_a: &A, alg_b: &B, proportion: bool) -> Result<bool>
where
    A: Counting + ?Sized,
    B: Counting + ?Sized,
{
    if proportion {
        verify_characteristic_proportion(rule, e[0], e[1], f[0], f[1], alg_a, alg_b)
    } else {
        verify_characteristic(rule, e[0], e[1], f[0], f[1], alg_a, alg_b)
    }
}

fn check_rule(rule: &str, q: [String; 4], args: &AlgebraArgs, proportion: bool) -> Result<Output> {
    let algebras = load(args)?;
    let (ok, rule, shown) = match &algebras {
        Algebras::Finite(a, b) => {
            let r = anaprop::terms::parse_rule(rule)?;
            let ix = indices(&q, a, b)?;
            let ok = characteristic(&r, [&ix[0], &ix[1]], [&ix[2], &ix[3]], a, b, proportion)?;
            let shown = r.to_string();
            (ok, r, shown)
        }
        Algebras::Builtin(p) => {
            let r = p.parse_rule(rule)?;
            let ok = match p {
                Preset::ZPlus => {
                    let e: Vec<Integer> = q.iter().map(|s| int(s)).collect::<Result<_>>()?;
                    let alg = IntAdd::new();
                    characteristic(&r, [&e[0], &e[1]], [&e[2], &e[3]], &alg, &alg, proportion)?
                }
                Preset::QMul => {
                    let e: Vec<Rational> = q.iter().map(|s| rat(s)).collect::<Result<_>>()?;
                    let alg = RatMul::new();
                    characteristic(&r, [&e[0], &e[1]], [&e[2], &e[3]], &alg, &alg, proportion)?
                }
                Preset::NMul => {
                    let e: Vec<Natural> = q.iter().map(|s| nat(s)).collect::<Result<_>>()?;
                    let alg = NatMul::new();
                    characteristic(&r, [&e[0], &e[1]], [&e[2], &e[3]], &alg, &alg, proportion)?
                }
                Preset::Word { algebra, tokens } => {
                    let e: Vec<Vec<Symbol>> = q.iter().map(|s| algebra.parse_word(s, *tokens)).collect::<Result<_>>()?;
                    characteristic(&r, [&e[0], &e[1]], [&e[2], &e[3]], algebra, algebra, proportion)?
                }
                Preset::Term(sig) => {
                    let e: Vec<Term> = q.iter().map(|s| signature_term(sig, s)).collect::<Result<_>>()?;
                    let alg = TermAlgebra::new(sig.clone());
                    characteristic(&r, [&e[0], &e[1]], [&e[2], &e[3]], &alg, &alg, proportion)?
                }
                Preset::Finite(_) => unreachable!("loaded as a pair"),
            };
            let shown = p.show_rule(&r);
            (ok, r, shown)
        }
    };
    let form = if proportion { "proportion" } else { "arrow" };
    let (status, detail) = if ok {
        (Status::Holds, format!("holds ({shown} is a characteristic justification of the {form})"))
    } else {
        (Status::Fails, format!("fails ({shown} is not a characteristic justification of the {form})"))
    };
    Ok(verdict_output(q.to_vec(), "check", status, None, Some(rule), detail))
}
