//! The `nlbox` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nlbox_core::boxes::CorrBox;
use nlbox_core::crypto;
use nlbox_core::distcomp::{self, BoolFn, PartyBox};
use nlbox_core::games::{self, SolverConfig, XorGame};
use nlbox_core::lp::Feasibility;
use nlbox_core::multigen::{self, Pair, TriBox};
use nlbox_core::polytope::{self, DEFAULT_ARCSIN_TOL};
use nlbox_core::rat::{parse_rat, to_f64, Frac, Rat};
use nlbox_core::wiring::{self, search, LocalStrategy};
use nlbox_core::{boxes, rat::int};

use crate::format;
use crate::parallel;

#[derive(Parser, Debug)]
#[command(name = "nlbox", version, about = "Exact computations on non-signalling correlation boxes")]
struct Cli {
    /// Worker threads for restart-based solvers (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Numerical tolerance for float-valued tests.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct BoxSource {
    /// Named box: pr, antipr, c, uniform, iso:p/q, corr:p/q, vertex:abgd, nl:abg.
    #[arg(long = "box")]
    name: Option<String>,
    /// Box file with sixteen `a b x y p/q` lines.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Protocol {
    Fww,
    Bs,
}

impl Protocol {
    fn as_str(self) -> &'static str {
        match self {
            Protocol::Fww => "fww",
            Protocol::Bs => "bs",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local, QuantumConsistent, SuperQuantumNS or Signalling.
    Classify(BoxSource),
    /// CHSH value and the four signed combinations.
    Chsh(BoxSource),
    /// Twirl into isotropic form; the box is canonicalized first unless --raw.
    Depolarize {
        #[command(flatten)]
        source: BoxSource,
        #[arg(long)]
        raw: bool,
    },
    /// Local decomposition as sixteen `αβγδ p/q` lines.
    Decompose(BoxSource),
    /// One protocol run on copies of P^C_ε, as a CSV row.
    Distill {
        #[arg(long, value_enum)]
        protocol: Protocol,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        eps: String,
    },
    /// Protocol runs over a grid of ε and n, as CSV.
    Sweep {
        #[arg(long, value_enum)]
        protocol: Protocol,
        /// Comma-separated ε values.
        #[arg(long, default_value = "1/8,1/4,3/8,1/2")]
        eps: String,
        /// Largest n for fww, or the number of rounds with --iterate.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Feed each bs output back in, starting from the first ε.
        #[arg(long)]
        iterate: bool,
    },
    /// Best CHSH over all deterministic two-box wirings of a box.
    ShortSearch(BoxSource),
    /// Classical, trivial and quantum values of a game file.
    Game {
        #[arg(long)]
        file: PathBuf,
    },
    /// Non-local computation game of a function on m bits.
    Nlc {
        /// Truth table in hex, input 0 at the least significant bit.
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value_t = 2)]
        bits: usize,
    },
    /// Evaluate f(x, y) with PR boxes.
    Vandam {
        #[arg(long = "fn")]
        function: String,
        /// Input bits per party.
        #[arg(long, default_value_t = 2)]
        bits: usize,
        #[arg(long)]
        check_all: bool,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        y: Option<usize>,
    },
    /// Build the parity box of f from bipartite PR boxes.
    Bp {
        #[arg(long = "fn")]
        function: String,
        /// Comma-separated input bits per party.
        #[arg(long, default_value = "1,1,1")]
        arity: String,
    },
    /// Oblivious transfer from one PR box.
    Ot {
        #[command(subcommand)]
        action: OtAction,
    },
    /// Bit commitment from PR boxes.
    Bc {
        #[command(subcommand)]
        action: BcAction,
    },
    /// Tripartite box checks.
    Tri {
        /// Box file with sixty-four `a b c x y z p/q` lines.
        #[arg(long, conflicts_with = "name")]
        file: Option<PathBuf>,
        /// parity, pr-ab, pr-ac, pr-bc, uniform.
        #[arg(long = "box")]
        name: Option<String>,
        /// Print the dimension of the non-signalling polytope.
        #[arg(long)]
        dimension: bool,
    },
    /// Boxes with larger alphabets.
    Genbox {
        /// GenBox file: header `dx dy da db`, then `a b x y p/q` lines.
        #[arg(long, conflicts_with = "vertex")]
        file: Option<PathBuf>,
        /// The k-output vertex with (b − a) ≡ xy mod k.
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long)]
        da: Option<usize>,
        #[arg(long)]
        db: Option<usize>,
        /// Reduce outputs modulo d and print the result.
        #[arg(long)]
        project: Option<usize>,
        /// Combine with the d′-output vertex by Chinese remaindering.
        #[arg(long)]
        compose: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum OtAction {
    /// Correctness, privacy and the reduction attack.
    Demo,
}

#[derive(Subcommand, Debug)]
enum BcAction {
    /// One honest commit and reveal.
    Demo {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        bit: u8,
    },
    /// Exact hiding and binding advantages.
    Analyze {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

struct Ctx {
    threads: usize,
    tol: Option<f64>,
    seed: u64,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 success, 1 domain error, 2 usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let ctx = Ctx {
        threads: cli
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        tol: cli.tol,
        seed: cli.seed,
    };
    match execute(&cli.command, &ctx, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn load_box(src: &BoxSource) -> Result<CorrBox> {
    match (&src.name, &src.file) {
        (Some(n), _) => Ok(format::parse_named_box(n)?.build()?),
        (_, Some(p)) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(format::parse_box(&text)?)
        }
        _ => bail!("one of --box or --file is required"),
    }
}

fn rat_arg(s: &str) -> Result<Rat> {
    Ok(parse_rat(s)?)
}

fn strategy_text(s: &LocalStrategy) -> String {
    let bits = |v: &[u8]| v.iter().map(|b| char::from(b'0' + b)).collect::<String>();
    let order: String = s.order().iter().map(|i| i.to_string()).collect();
    let inputs: Vec<String> = s.input_fns().iter().map(|t| bits(t)).collect();
    format!("order:{order} inputs:{} output:{}", inputs.join(","), bits(s.output_fn()))
}

fn solver(ctx: &Ctx) -> SolverConfig {
    SolverConfig {
        seed: ctx.seed,
        tol: ctx.tol.unwrap_or(SolverConfig::default().tol),
        ..SolverConfig::default()
    }
}

fn execute(cmd: &Command, ctx: &Ctx, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Classify(src) => {
            let b = load_box(src)?;
            let class = polytope::classify_with_tol(&b, ctx.tol.unwrap_or(DEFAULT_ARCSIN_TOL));
            writeln!(out, "class={}", class.as_str())?;
        }
        Command::Chsh(src) => {
            let b = load_box(src)?;
            writeln!(out, "chsh={}", Frac(&b.chsh()))?;
            for (i, s) in b.chsh_expressions().iter().enumerate() {
                writeln!(out, "s{}{}={}", i >> 1, i & 1, Frac(s))?;
            }
            writeln!(out, "nonsignalling={}", b.is_nonsignalling())?;
        }
        Command::Depolarize { source, raw } => {
            let b = load_box(source)?;
            let d = if *raw { polytope::depolarize(&b)? } else { polytope::depolarize_canonical(&b)? };
            let eps = polytope::isotropic_parameter(&d).ok_or_else(|| anyhow!("twirl did not give an isotropic box"))?;
            writeln!(out, "# eps={}", Frac(&eps))?;
            out.write_all(format::write_box(&d).as_bytes())?;
        }
        Command::Decompose(src) => {
            let b = load_box(src)?;
            match polytope::local_decompose(&b)? {
                Some(d) => out.write_all(format::write_decomposition(&d).as_bytes())?,
                None => {
                    writeln!(out, "local=false")?;
                    writeln!(out, "chsh={}", Frac(&b.chsh()))?;
                }
            }
        }
        Command::Distill { protocol, n, eps } => {
            let eps = rat_arg(eps)?;
            writeln!(out, "protocol,eps,n,chsh_in,chsh_out,formula,match")?;
            writeln!(out, "{}", distill_row(*protocol, &eps, *n)?)?;
        }
        Command::Sweep {
            protocol,
            eps,
            n,
            iterate,
        } => {
            let grid = eps.split(',').map(rat_arg).collect::<Result<Vec<_>>>()?;
            if *iterate {
                if *protocol != Protocol::Bs {
                    bail!("--iterate needs --protocol bs");
                }
                sweep_iterate(&grid[0], *n, out)?;
            } else {
                writeln!(out, "protocol,eps,n,chsh_in,chsh_out,formula,match")?;
                let ns: Vec<usize> = match protocol {
                    Protocol::Fww => (1..=*n).collect(),
                    Protocol::Bs => vec![2],
                };
                for e in &grid {
                    for &k in &ns {
                        writeln!(out, "{}", distill_row(*protocol, e, k)?)?;
                    }
                }
            }
        }
        Command::ShortSearch(src) => {
            let b = load_box(src)?;
            let r = search::max_chsh_over_wirings(&b)?;
            let w = r.witness();
            writeln!(out, "chsh_in={}", Frac(&b.chsh()))?;
            writeln!(out, "max_chsh={}", Frac(&r.chsh))?;
            writeln!(out, "distills={}", r.chsh > b.chsh())?;
            writeln!(out, "alice={}", strategy_text(&w.alice))?;
            writeln!(out, "bob={}", strategy_text(&w.bob))?;
        }
        Command::Game { file } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let g = format::parse_game(&text)?;
            let wc = games::classical_value(&g)?;
            writeln!(out, "omega_c={}", Frac(&wc))?;
            match XorGame::from_game(&g) {
                Some(xg) => xor_report(&xg, &wc, ctx, out)?,
                None => writeln!(out, "xor=false")?,
            }
        }
        Command::Nlc { function, bits } => {
            let f = BoolFn::from_hex(vec![*bits], function)?;
            let g = games::nlc_game(f.table())?;
            let wc = games::classical_value(&g.to_game())?;
            writeln!(out, "omega_c={}", Frac(&wc))?;
            let wq = parallel::xor_quantum_value(&g, &solver(ctx), ctx.threads)?;
            writeln!(out, "omega_q={wq:.10}")?;
            writeln!(out, "gap={:.3e}", (wq - to_f64(&wc)).abs())?;
        }
        Command::Vandam {
            function,
            bits,
            check_all,
            x,
            y,
        } => {
            let f = BoolFn::from_hex(vec![*bits, *bits], function)?;
            let form = distcomp::factor_bipartite(&f)?;
            writeln!(out, "terms={}", form.terms.len())?;
            writeln!(out, "boxes={}", form.terms.len())?;
            if *check_all {
                let ok = distcomp::van_dam_check_all(&f)?;
                writeln!(out, "verified={ok}")?;
                if !ok {
                    bail!("protocol output disagrees with f");
                }
            }
            match (x, y) {
                (Some(x), Some(y)) => {
                    let p = distcomp::van_dam_success(&form, &f, *x, *y, &boxes::pr())?;
                    writeln!(out, "f={}", u8::from(f.eval(f.pack(&[*x, *y]))))?;
                    writeln!(out, "success={}", Frac(&p))?;
                }
                (None, None) => {}
                _ => bail!("--x and --y go together"),
            }
        }
        Command::Bp { function, arity } => {
            let arity = arity
                .split(',')
                .map(|s| s.trim().parse::<usize>().context("arity entries are integers"))
                .collect::<Result<Vec<_>>>()?;
            let f = BoolFn::from_hex(arity, function)?;
            let built = distcomp::bp_simulate(&f)?;
            let exact = built == PartyBox::parity_target(&f);
            let monomials = distcomp::anf(&f).len();
            writeln!(out, "parties={}", f.parties())?;
            writeln!(out, "monomials={monomials}")?;
            writeln!(out, "exact={exact}")?;
            writeln!(out, "nonsignalling={}", built.is_nonsignalling())?;
            if let Some(bits) = distcomp::parity_broadcast(&f)? {
                writeln!(out, "broadcast_bits={bits}")?;
            }
        }
        Command::Ot { action: OtAction::Demo } => {
            let mut correct = true;
            for k in 0..8u8 {
                correct &= crypto::ot_correctness(k >> 2 & 1, k >> 1 & 1, k & 1) == int(1);
            }
            let p = crypto::ot_privacy_report();
            let r = crypto::ot_reduction_attack();
            writeln!(out, "correct={correct}")?;
            writeln!(out, "sender_leak={}", Frac(&p.sender_leak))?;
            writeln!(out, "receiver_leak={}", Frac(&p.receiver_leak))?;
            writeln!(out, "reduction_honest={}", Frac(&r.honest))?;
            writeln!(out, "reduction_cheating={}", Frac(&r.cheating))?;
            writeln!(out, "reduction_view_distance={}", Frac(&r.sender_view_distance))?;
        }
        Command::Bc { action } => match action {
            BcAction::Demo { n, k, bit } => {
                if *bit > 1 {
                    bail!("--bit must be 0 or 1");
                }
                let t = crypto::bc_honest_run(*bit, *n, *k, ctx.seed)?;
                let bits = |v: &[u8]| v.iter().map(|b| char::from(b'0' + b)).collect::<String>();
                for (i, r) in t.rounds.iter().enumerate() {
                    writeln!(
                        out,
                        "round={i} x={} a={} big_a={} y={} b={} accepted={}",
                        bits(&r.x),
                        bits(&r.a),
                        r.big_a,
                        bits(&r.y),
                        bits(&r.b),
                        r.accepted
                    )?;
                }
                writeln!(out, "accepted={}", t.accepted)?;
            }
            BcAction::Analyze { n, k } => {
                let h = crypto::bc_hiding_advantage(*n, *k)?;
                let b = crypto::bc_binding_advantage(*n, *k)?;
                writeln!(out, "hiding={}", Frac(&h))?;
                writeln!(out, "hiding_bound={}", Frac(&crypto::hiding_reference(*n, *k)))?;
                writeln!(out, "binding={}", Frac(&b))?;
                writeln!(out, "binding_reference={}", Frac(&crypto::binding_reference(*k)))?;
                writeln!(out, "honest_accept={}", Frac(&crypto::bc_honest_accept_probability(0, *n, *k)?))?;
            }
        },
        Command::Tri { file, name, dimension } => {
            if *dimension {
                writeln!(out, "dimension={}", multigen::tri_dimension())?;
            }
            let t = match (file, name) {
                (Some(p), _) => {
                    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    Some(format::parse_tribox(&text)?)
                }
                (_, Some(n)) => Some(named_tribox(n)?),
                _ => None,
            };
            match t {
                Some(t) => tri_report(&t, out)?,
                None if *dimension => {}
                None => bail!("one of --file, --box or --dimension is required"),
            }
        }
        Command::Genbox {
            file,
            vertex,
            da,
            db,
            project,
            compose,
        } => {
            let g = match (file, vertex) {
                (Some(p), _) => {
                    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    format::parse_genbox(&text)?
                }
                (_, Some(k)) => multigen::d_output_vertex(*k, da.unwrap_or(*k), db.unwrap_or(*k))?,
                _ => bail!("one of --file or --vertex is required"),
            };
            let [dx, dy, a, b] = g.dims();
            writeln!(out, "dims={dx} {dy} {a} {b}")?;
            writeln!(out, "nonsignalling={}", g.is_nonsignalling())?;
            writeln!(out, "dimension={}", multigen::genbox_dimension(g.dims()))?;
            if dx == 2 && dy == 2 {
                writeln!(out, "dimension_formula={}", multigen::genbox_dimension_formula(a, b))?;
            }
            let mut result = None;
            if let Some(d2) = compose {
                let other = multigen::d_output_vertex(*d2, *d2, *d2)?;
                result = Some(multigen::compose_coprime(&g, &other)?);
            }
            if let Some(d) = project {
                result = Some(multigen::project_mod(result.as_ref().unwrap_or(&g), *d)?);
            }
            if let Some(r) = result {
                let [_, _, ra, rb] = r.dims();
                if ra == rb {
                    let vertex = multigen::d_output_vertex(ra, ra, rb).ok();
                    writeln!(out, "is_vertex={}", vertex.as_ref() == Some(&r))?;
                }
                out.write_all(format::write_genbox(&r).as_bytes())?;
            }
        }
    }
    Ok(())
}

fn distill_row(protocol: Protocol, eps: &Rat, n: usize) -> Result<String> {
    let b = boxes::correlated_nonlocal(eps)?;
    let (w, formula, n) = match protocol {
        Protocol::Fww => {
            if n == 0 || n > 12 {
                bail!("fww needs 1 ≤ n ≤ 12");
            }
            (wiring::fww(n), wiring::fww_formula(eps, n), n)
        }
        Protocol::Bs => {
            if n != 2 {
                bail!("bs uses exactly two boxes");
            }
            (wiring::bs2(), wiring::bs_formula(eps), 2)
        }
    };
    let outb = wiring::compose(&w, &vec![b.clone(); n])?;
    let chsh_out = outb.chsh();
    Ok(format!(
        "{},{},{n},{},{},{},{}",
        protocol.as_str(),
        Frac(eps),
        Frac(&b.chsh()),
        Frac(&chsh_out),
        Frac(&formula),
        chsh_out == formula
    ))
}

fn sweep_iterate(eps0: &Rat, rounds: usize, out: &mut dyn Write) -> Result<()> {
    let steps = wiring::iterate_bs(eps0, rounds)?;
    let bcc2 = distcomp::bcc_squared();
    writeln!(out, "protocol,eps,n,chsh_in,chsh_out,formula,match,crossed_bcc")?;
    let mut crossed = false;
    for (i, pair) in steps.windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        let formula = wiring::bs_formula(&prev.eps);
        let now = !crossed && &next.chsh * &next.chsh > bcc2;
        crossed |= now;
        writeln!(
            out,
            "bs,{},{},{},{},{},{},{}",
            Frac(&prev.eps),
            i + 1,
            Frac(&prev.chsh),
            Frac(&next.chsh),
            Frac(&formula),
            next.chsh == formula,
            now
        )?;
    }
    Ok(())
}

fn xor_report(g: &XorGame, wc: &Rat, ctx: &Ctx, out: &mut dyn Write) -> Result<()> {
    let tau = games::trivial_value(g);
    writeln!(out, "tau={}", Frac(&tau))?;
    let wq = parallel::xor_quantum_value(g, &solver(ctx), ctx.threads)?;
    writeln!(out, "omega_q={wq:.10}")?;
    let report = games::thm8_check_with(g, wq)?;
    writeln!(out, "thm8_bound={:.10}", report.bound)?;
    writeln!(out, "thm8_holds={}", report.holds)?;
    if wc != &tau {
        let ratio = games::grothendieck_ratio_with(g, wq)?;
        let kg = games::GameBounds::standard().kg_high;
        writeln!(out, "ratio={ratio:.10}")?;
        writeln!(out, "ratio_within_kg={}", ratio <= kg + 1e-9)?;
    }
    Ok(())
}

fn named_tribox(n: &str) -> Result<TriBox> {
    Ok(match n {
        "parity" => TriBox::parity_xyz(),
        "pr-ab" => TriBox::product(&boxes::pr(), Pair::AB, [0, 0]),
        "pr-ac" => TriBox::product(&boxes::pr(), Pair::AC, [0, 0]),
        "pr-bc" => TriBox::product(&boxes::pr(), Pair::BC, [0, 0]),
        "uniform" => TriBox::uniform(),
        _ => bail!("unknown tripartite box `{n}` (parity, pr-ab, pr-ac, pr-bc, uniform)"),
    })
}

fn tri_report(t: &TriBox, out: &mut dyn Write) -> Result<()> {
    let ns = multigen::tri_nonsignalling(t);
    writeln!(out, "ns_pairwise={}", ns.pairwise)?;
    writeln!(out, "ns_single_party={}", ns.single_party)?;
    if !ns.holds() {
        bail!("box is signalling: {:?}", ns.witness.expect("witness for a failed check"));
    }
    let full = matches!(multigen::tri_local_membership(t), Feasibility::Feasible(_));
    writeln!(out, "two_way_local={}", multigen::tri_two_way_local(t).is_some())?;
    writeln!(out, "fully_local={full}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("nlbox").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["chsh", "--box", "pr", "--bogus"]).0, 2);
        assert_eq!(call(&["chsh"]).0, 2);
        assert_eq!(call(&["chsh", "--box", "pr", "--file", "x"]).0, 2);
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, _, err) = call(&["chsh", "--box", "iso:3/2"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
        assert_eq!(call(&["distill", "--protocol", "bs", "--n", "3", "--eps", "1/4"]).0, 1);
        assert_eq!(call(&["genbox", "--vertex", "2", "--compose", "2"]).0, 1);
    }

    #[test]
    fn chsh_and_classify() {
        let (code, out, _) = call(&["chsh", "--box", "pr"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("chsh=4/1"));
        assert_eq!(call(&["classify", "--box", "uniform"]).1, "class=Local\n");
        assert_eq!(call(&["classify", "--box", "pr"]).1, "class=SuperQuantumNS\n");
    }

    #[test]
    fn strategy_serialization() {
        let s = strategy_text(&wiring::bs2().alice);
        assert_eq!(s, "order:01 inputs:01,0001 output:00111100");
    }
}
