use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lensgrid::random::{random_moves, rng_from_seed};
use lensgrid::{
    apply_move, apply_word, diffeo_classify, diffeo_orbit, homology_classes, isotopy_search, kauffman_bracket,
    lift_component_count_formula, lift_grid, normalize, parse, parse_markings, parse_word, planar_diagram, render,
    serialize, tabulate, trace_components, validate, BracketConfig, DiffeoError, EquivalenceError, Exec, GridDiagram,
    LensSpace, MoveError, MoveKind, RenderOptions, SearchConfig, Verdict, DEFAULT_BUDGET, DEFAULT_CAP,
};

/// Grid diagrams of links in lens spaces.
///
/// Diagrams are read from a file, or from standard input when the path is
/// omitted or `-`. Reports are `key<TAB>value` lines; emitted diagrams use the
/// grid text format, with any extra information on `#` comment lines.
#[derive(Parser)]
#[command(name = "lensgrid", version)]
struct Cli {
    /// Run every computation on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Diagram file; standard input when omitted or `-`.
    file: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct SearchFlags {
    /// Largest grid number visited during the search (default: input + 2).
    #[arg(long)]
    n_max: Option<u32>,
    /// Canonical forms stored per search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Largest lift crossing count for which the bracket is evaluated.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the grid invariants and list every violation.
    Validate(Input),
    /// Draw the diagram with its arcs.
    Render {
        #[command(flatten)]
        input: Input,
        /// Color the markings (ignored when NO_COLOR is set).
        #[arg(long)]
        color: bool,
    },
    /// Apply grid moves, given explicitly or drawn at random.
    Move {
        #[command(flatten)]
        input: Input,
        /// A move such as `commute-rows 0`, `stabilize 1 NE`, `destabilize 0 3`, `translate-h 2`.
        #[arg(long, value_parser = parse_move, conflicts_with = "random")]
        apply: Vec<MoveKind>,
        /// Number of random moves.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest grid number reachable by random stabilizations (default: input + 1).
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Apply a word in tau, sigma+ and sigma-, rightmost generator first.
    Diffeo {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        apply: String,
    },
    /// Homology class of every component.
    Homology(Input),
    /// The lift to the 3-sphere.
    Lift(Input),
    /// Kauffman bracket of the diagram, or of its lift outside the 3-sphere.
    Bracket {
        #[command(flatten)]
        input: Input,
        /// Largest crossing count accepted.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Search for an isotopy, or a diffeomorphism followed by an isotopy, from A to B.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Also try every image of B under the diffeotopy group.
        #[arg(long)]
        diffeo: bool,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Images under every element of the diffeotopy group.
    Orbit(Input),
    /// Enumerate all diagrams up to grid number N (at most 3) and group them into classes.
    Tabulate {
        p: u32,
        q: u32,
        n: u32,
        #[command(flatten)]
        search: SearchFlags,
        /// Total search budget shared by the whole tabulation.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        total_budget: usize,
        /// Write the catalog here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Appends one formatted line.
macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn parse_move(s: &str) -> Result<MoveKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Exit status classes.
enum Failure {
    /// A validation report, printed on standard output.
    Invalid(String),
    Input(String),
    Inapplicable(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) | Failure::Input(_) => 1,
            Failure::Inapplicable(_) => 2,
            Failure::Usage(_) => 3,
        }
    }
}

impl From<MoveError> for Failure {
    fn from(e: MoveError) -> Self {
        Failure::Inapplicable(e.to_string())
    }
}

impl From<DiffeoError> for Failure {
    fn from(e: DiffeoError) -> Self {
        match e {
            DiffeoError::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Inapplicable(e.to_string()),
        }
    }
}

impl From<EquivalenceError> for Failure {
    fn from(e: EquivalenceError) -> Self {
        match e {
            EquivalenceError::LensMismatch(..) => Failure::Input(e.to_string()),
            EquivalenceError::Diffeo(d) => d.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn read_text(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_diagram(path: Option<&PathBuf>) -> Result<GridDiagram, Failure> {
    let text = read_text(path)?;
    parse(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let search_config = |s: SearchFlags| SearchConfig {
        n_max: s.n_max,
        budget: s.budget,
        bracket: BracketConfig { cap: s.cap, exec },
        exec,
    };
    let mut out = String::new();
    match cli.command {
        Command::Validate(input) => {
            let text = read_text(input.file.as_ref())?;
            let set = parse_markings(&text).map_err(|e| Failure::Input(e.to_string()))?;
            let report = validate(&set);
            if !report.is_ok() {
                let mut msg = String::new();
                emit!(msg, "valid\tfalse");
                for v in &report.violations {
                    emit!(msg, "violation\t{v}");
                }
                return Err(Failure::Invalid(msg));
            }
            let g = GridDiagram::from_markings(&set).expect("validated");
            emit!(out, "valid\ttrue");
            emit!(out, "lens\t{}", g.lens());
            emit!(out, "grid\t{}", g.n());
            emit!(out, "components\t{}", trace_components(&g).len());
        }
        Command::Render { input, color } => {
            let g = read_diagram(input.file.as_ref())?;
            let color = color && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
            out = render(&g, RenderOptions { color });
        }
        Command::Move { input, apply, random, seed, n_max } => {
            let g = read_diagram(input.file.as_ref())?;
            let end = match random {
                Some(k) => {
                    let limit = n_max.unwrap_or(g.n() + 1);
                    if limit < g.n() {
                        return Err(Failure::Usage(format!("--n-max {limit} is below the grid number {}", g.n())));
                    }
                    let (path, end) = random_moves(&g, k, limit, &mut rng_from_seed(seed));
                    for mv in path {
                        emit!(out, "# move\t{mv}");
                    }
                    end
                }
                None => apply.iter().try_fold(g, |d, &mv| apply_move(&d, mv))?,
            };
            out += &serialize(&end);
        }
        Command::Diffeo { input, apply } => {
            let g = read_diagram(input.file.as_ref())?;
            let word = parse_word(&apply)?;
            out = serialize(&apply_word(&g, &word)?);
        }
        Command::Homology(input) => {
            let g = read_diagram(input.file.as_ref())?;
            for (i, delta) in homology_classes(&g).into_iter().enumerate() {
                emit!(out, "component {i}\tdelta {delta}");
            }
        }
        Command::Lift(input) => {
            let g = read_diagram(input.file.as_ref())?;
            let lift = lift_grid(&g);
            emit!(out, "# components\t{}", trace_components(&lift).len());
            emit!(out, "# predicted\t{}", lift_component_count_formula(&g));
            out += &serialize(&lift);
        }
        Command::Bracket { input, cap } => {
            let g = read_diagram(input.file.as_ref())?;
            let sphere = if g.lens().is_sphere() { g } else { lift_grid(&g) };
            let pd = planar_diagram(&sphere).expect("lifts live in the 3-sphere");
            let cfg = BracketConfig { cap, exec };
            let bracket = kauffman_bracket(&pd, &cfg).map_err(|e| Failure::Input(e.to_string()))?;
            let normalized = normalize(&bracket, pd.writhe());
            emit!(out, "components\t{}", pd.component_count);
            emit!(out, "crossings\t{}", pd.crossing_count());
            emit!(out, "writhe\t{}", pd.writhe());
            emit!(out, "bracket\t{bracket}");
            emit!(out, "normalized\t{normalized}");
            emit!(out, "jones\t{}", normalized.to_t_string());
        }
        Command::Equiv { a, b, diffeo, search } => {
            let (ga, gb) = (read_diagram(Some(&a))?, read_diagram(Some(&b))?);
            let cfg = search_config(search);
            let report = if diffeo { diffeo_classify(&ga, &gb, &cfg)? } else { isotopy_search(&ga, &gb, &cfg)? };
            match &report.verdict {
                Verdict::Equivalent { path, via } => {
                    emit!(out, "verdict\tequivalent");
                    emit!(out, "via\t{via}");
                    for mv in path {
                        emit!(out, "move\t{mv}");
                    }
                }
                Verdict::DistinctCertified(w) => {
                    emit!(out, "verdict\tdistinct");
                    emit!(out, "witness\t{w}");
                }
                Verdict::Unknown => emit!(out, "verdict\tunknown"),
            }
            let s = report.stats;
            emit!(out, "nodes\t{}", s.nodes);
            emit!(out, "layers\t{}", s.layers);
            emit!(out, "n_limit\t{}", s.n_limit);
            emit!(out, "budget_exhausted\t{}", s.budget_exhausted);
        }
        Command::Orbit(input) => {
            let g = read_diagram(input.file.as_ref())?;
            for (e, h) in diffeo_orbit(&g)? {
                let classes: Vec<String> = homology_classes(&h).iter().map(u32::to_string).collect();
                emit!(out, "element\t{e}");
                emit!(out, "delta\t{}", classes.join(" "));
                out += &serialize(&h);
            }
        }
        Command::Tabulate { p, q, n, search, total_budget, output } => {
            let lens = LensSpace::new(p, q).map_err(|e| Failure::Usage(e.to_string()))?;
            if n == 0 || n > 3 {
                return Err(Failure::Usage(format!("grid number {n} outside the supported range 1..=3")));
            }
            let catalog = tabulate(lens, n, total_budget, &search_config(search)).to_string();
            match output {
                Some(path) => {
                    std::fs::write(&path, catalog).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                }
                None => out = catalog,
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(_) => ExitCode::from(1),
            }
        }
        Err(failure) => {
            match &failure {
                Failure::Invalid(report) => print!("{report}"),
                Failure::Input(m) | Failure::Inapplicable(m) | Failure::Usage(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(failure.code())
        }
    }
}
