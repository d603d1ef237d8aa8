use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bchrom::bcoloring::{self, Coloring};
use bchrom::dominance;
use bchrom::generate;
use bchrom::graph::{self, Graph};
use bchrom::io;
use bchrom::oracle::{self, OracleBudget};
use bchrom::reduction;
use bchrom::tcexpr::{self, TcExpr};
use bchrom::tree_dp::{self, DomTable, RootedTree, SmmTable};
use bchrom::{DominanceVector, Error};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bchrom",
    version,
    about = "b-chromatic numbers, b-colorings and dominance vectors"
)]
struct Cli {
    /// Input format; defaults to tcx for `.tcx` files and edgelist otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Vertex limit for exhaustive searches.
    #[arg(long, global = true, default_value_t = 16)]
    max_n: usize,
    /// State limit for exhaustive searches.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_states: u64,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; searches currently run on one thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Tcx,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    ChiB,
    Chi,
    MinSmm,
    MinMaximal,
    Dominance,
    Deficiency,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report structural properties and the graph classes that apply.
    Analyze { file: PathBuf },
    /// Print the b-chromatic number.
    Bchromatic {
        file: PathBuf,
        /// Write a maximum b-coloring here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Write the tree tables here (trees only).
        #[arg(long)]
        dump_tables: Option<PathBuf>,
    },
    /// Print `t dom[t]` for every admissible t.
    Dominance {
        file: PathBuf,
        /// Write the tree tables here (trees only).
        #[arg(long)]
        dump_tables: Option<PathBuf>,
    },
    /// Compute a b-coloring with exactly k classes.
    Bcolor {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// b-colorings at every level from a maximum b-coloring down to chi.
    Chain { file: PathBuf },
    /// Check whether a coloring is a b-coloring.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Build the matching gadget of a bipartite graph.
    Reduce {
        file: PathBuf,
        #[arg(short)]
        o: PathBuf,
    },
    /// Check the gadget identity on a bipartite graph.
    Certify {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Exhaustive reference values.
    Oracle {
        #[arg(value_enum)]
        quantity: Quantity,
        file: PathBuf,
        /// Matching size for `deficiency`.
        #[arg(short)]
        k: Option<usize>,
    },
    /// Time the tree programs on random trees.
    Bench {
        /// Tree sizes for the minimum strongly maximal matching.
        #[arg(long, value_delimiter = ',', default_value = "1000")]
        sizes: Vec<usize>,
        /// Tree sizes for the full deficiency table.
        #[arg(long, value_delimiter = ',', default_value = "300")]
        table_sizes: Vec<usize>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Run<T = ()> = Result<T, Failure>;

enum Input {
    Plain(Graph),
    Expr(TcExpr),
}

impl Input {
    fn graph(&self) -> Graph {
        match self {
            Input::Plain(g) => g.clone(),
            Input::Expr(e) => e.to_graph(),
        }
    }

    fn expr(&self) -> Option<TcExpr> {
        match self {
            Input::Plain(g) => tcexpr::decompose_tree_cograph(g).ok(),
            Input::Expr(e) => Some(e.clone()),
        }
    }
}

fn read_text(path: &Path) -> Run<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Run {
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Ctx {
    format: Option<Format>,
    budget: OracleBudget,
    seed: u64,
}

impl Ctx {
    fn load(&self, path: &Path) -> Run<Input> {
        let text = read_text(path)?;
        let tcx = match self.format {
            Some(Format::Tcx) => true,
            Some(Format::Edgelist) => false,
            None => path.extension().is_some_and(|x| x == "tcx"),
        };
        if tcx {
            let e = io::parse_tcx(&text, path.parent())?;
            e.validate()?;
            Ok(Input::Expr(e))
        } else {
            Ok(Input::Plain(io::parse_edge_list(&text)?))
        }
    }

    fn load_graph(&self, path: &Path) -> Run<Graph> {
        Ok(self.load(path)?.graph())
    }
}

fn shape(e: &TcExpr) -> String {
    match e {
        TcExpr::Tree(l) => format!("tree:{}", l.tree.n()),
        TcExpr::CoTree(l) => format!("cotree:{}", l.tree.n()),
        TcExpr::Union(cs) | TcExpr::Join(cs) => {
            let op = if matches!(e, TcExpr::Union(_)) {
                "union"
            } else {
                "join"
            };
            let parts: Vec<String> = cs.iter().map(shape).collect();
            format!("{op}({})", parts.join(", "))
        }
    }
}

fn tree_dump(t: &Graph) -> Run<String> {
    let rt = RootedTree::new(t)?;
    Ok(tree_dp::dump_tables(
        &rt,
        &SmmTable::build(&rt),
        &DomTable::build(&rt),
    ))
}

fn maybe_dump(g: &Graph, dump: Option<&Path>) -> Run<Option<(PathBuf, String)>> {
    let Some(path) = dump else { return Ok(None) };
    if !g.is_tree() || g.n() < 2 {
        return Err(Error::NotATree.into());
    }
    Ok(Some((path.to_path_buf(), tree_dump(g)?)))
}

fn dominance_of(ctx: &Ctx, input: &Input) -> Run<DominanceVector> {
    let g = input.graph();
    if g.is_tree() {
        return Ok(dominance::dominance_vector_tree(&g)?);
    }
    if let Some(e) = input.expr() {
        return Ok(dominance::dominance_tc(&e)?);
    }
    Ok(oracle::oracle_dominance(&g, ctx.budget)?)
}

fn analyze(ctx: &Ctx, input: &Input) -> Run<String> {
    let g = input.graph();
    let mut out = String::new();
    writeln!(out, "vertices: {}", g.n()).unwrap();
    writeln!(out, "edges: {}", g.edge_count()).unwrap();
    writeln!(out, "max-degree: {}", g.max_degree()).unwrap();
    writeln!(out, "connected: {}", yn(g.is_connected())).unwrap();
    writeln!(out, "tree: {}", yn(g.is_tree())).unwrap();
    writeln!(out, "bipartite: {}", yn(g.is_bipartite())).unwrap();
    writeln!(out, "triangle-free: {}", yn(g.is_triangle_free())).unwrap();
    let s2 = g.stability_at_most_two();
    writeln!(out, "stability-two: {}", yn(s2)).unwrap();
    let expr = input.expr();
    writeln!(out, "tree-cograph: {}", yn(expr.is_some())).unwrap();
    if let Some(e) = &expr {
        writeln!(out, "decomposition: {}", shape(e)).unwrap();
    }
    if g.is_tree() && g.n() >= 2 {
        writeln!(out, "m-degree: {}", g.m_degree_bound()).unwrap();
        let p = dominance::find_pivot(&g)?;
        let pivot = p.pivot.map_or("none".to_string(), |v| v.to_string());
        writeln!(out, "pivot: {pivot}").unwrap();
    }
    let chi = if let Some(e) = &expr {
        Some(dominance::chromatic_tc(e)?)
    } else if s2 {
        Some(graph::chromatic_stability2(&g)?)
    } else {
        None
    };
    let chi_b = if g.n() == 0 {
        Some(0)
    } else if let Some(e) = &expr {
        Some(dominance::b_chromatic_tc(e)?)
    } else if s2 {
        bcoloring::b_chromatic_stability2(&g, ctx.budget.max_n)
            .ok()
            .map(|x| x.0)
    } else {
        None
    };
    let show = |x: Option<usize>| x.map_or("unknown".to_string(), |v| v.to_string());
    writeln!(out, "chromatic: {}", show(chi)).unwrap();
    writeln!(out, "b-chromatic: {}", show(chi_b)).unwrap();
    Ok(out)
}

/// b-chromatic number with a witness coloring when one is available.
fn bchromatic(ctx: &Ctx, input: &Input, want_witness: bool) -> Run<(usize, Option<Coloring>)> {
    let g = input.graph();
    if g.n() == 0 {
        return Ok((0, Some(Coloring::new(vec![], 0)?)));
    }
    if g.is_tree() {
        let b = dominance::b_chromatic_tree(&g)?;
        let w = if want_witness {
            Some(dominance::b_coloring_tree(&g, b)?)
        } else {
            None
        };
        return Ok((b, w));
    }
    if g.stability_at_most_two() {
        let (b, c) = bcoloring::b_chromatic_stability2(&g, ctx.budget.max_n)?;
        return Ok((b, Some(c)));
    }
    let Some(e) = input.expr() else {
        return Err(Error::NotTreeCograph.into());
    };
    let b = dominance::b_chromatic_tc(&e)?;
    let w = if want_witness {
        Some(oracle_coloring(ctx, &g, b)?)
    } else {
        None
    };
    Ok((b, w))
}

/// First b-coloring with `k` classes found by exhaustive search.
fn oracle_coloring(ctx: &Ctx, g: &Graph, k: usize) -> Run<Coloring> {
    let mut found = None;
    oracle::for_each_coloring(g, ctx.budget, |colors, t| {
        if found.is_none() && t == k && oracle::dominant_class_count(g, colors, t) == t {
            found = Some(colors.to_vec());
        }
    })?;
    match found {
        Some(c) => Ok(Coloring::new(c, k)?),
        None => Err(Failure::Domain(format!("no b-coloring with {k} classes"))),
    }
}

fn bcolor(ctx: &Ctx, input: &Input, k: usize) -> Run<Coloring> {
    let g = input.graph();
    if g.is_tree() {
        return Ok(dominance::b_coloring_tree(&g, k)?);
    }
    if g.stability_at_most_two() {
        let (_, top) = bcoloring::b_chromatic_stability2(&g, ctx.budget.max_n)?;
        let chain = bcoloring::continuity_chain(&g, &top)?;
        let lo = chain.last().map_or(0, |c| c.t);
        return chain.into_iter().find(|c| c.t == k).ok_or_else(|| {
            Error::OutOfRange {
                what: "k",
                value: k,
                lo,
                hi: top.t,
            }
            .into()
        });
    }
    oracle_coloring(ctx, &g, k)
}

fn oracle_query(ctx: &Ctx, q: Quantity, g: &Graph, k: Option<usize>) -> Run<String> {
    let b = ctx.budget;
    Ok(match q {
        Quantity::ChiB => format!("{}\n", oracle::oracle_chi_b(g, b)?),
        Quantity::Chi => format!("{}\n", oracle::oracle_chromatic(g, b)?),
        Quantity::MinSmm => format!("{}\n", oracle::oracle_min_smm(g, b)?.0),
        Quantity::MinMaximal => format!("{}\n", oracle::oracle_min_maximal_matching(g, b)?.0),
        Quantity::Dominance => dominance_lines(&oracle::oracle_dominance(g, b)?),
        Quantity::Deficiency => {
            let k = k.ok_or_else(|| Failure::Usage("deficiency needs -k".into()))?;
            format!("{}\n", oracle::oracle_f_t_k(g, k, b)?)
        }
    })
}

fn dominance_lines(d: &DominanceVector) -> String {
    d.entries().map(|(t, v)| format!("{t} {v}\n")).collect()
}

fn bench(ctx: &Ctx, sizes: &[usize], table_sizes: &[usize]) -> Run<String> {
    let mut out = String::new();
    for &n in sizes {
        let t = generate::random_tree(n, &mut generate::rng_from_seed(ctx.seed));
        let start = Instant::now();
        let (size, m) = tree_dp::min_smm_forest(&t)?;
        let secs = start.elapsed().as_secs_f64();
        let again = generate::random_tree(n, &mut generate::rng_from_seed(ctx.seed));
        let stable = again == t && tree_dp::min_smm_forest(&again)?.1 == m;
        writeln!(
            out,
            "min-smm n={n}: size {size} time {secs:.3}s stable {}",
            yn(stable)
        )
        .unwrap();
        if !stable {
            return Err(Failure::Domain(format!("unstable result at n = {n}")));
        }
    }
    for &n in table_sizes {
        let t = generate::random_tree(n, &mut generate::rng_from_seed(ctx.seed));
        let start = Instant::now();
        let f = if n >= 2 {
            tree_dp::f_tree_vector(&t)?
        } else {
            Vec::new()
        };
        let secs = start.elapsed().as_secs_f64();
        let finite = f.iter().filter(|c| c.is_finite()).count();
        writeln!(
            out,
            "table n={n}: entries {} finite {finite} time {secs:.3}s",
            f.len()
        )
        .unwrap();
    }
    Ok(out)
}

fn run(cli: Cli) -> Run<String> {
    let ctx = Ctx {
        format: cli.format,
        budget: OracleBudget {
            max_n: cli.max_n,
            max_states: cli.max_states,
        },
        seed: cli.seed,
    };
    match cli.cmd {
        Cmd::Analyze { file } => analyze(&ctx, &ctx.load(&file)?),
        Cmd::Bchromatic {
            file,
            witness,
            dump_tables,
        } => {
            let input = ctx.load(&file)?;
            let dump = maybe_dump(&input.graph(), dump_tables.as_deref())?;
            let (b, c) = bchromatic(&ctx, &input, witness.is_some())?;
            if let Some(path) = &witness {
                let c = c.ok_or_else(|| Failure::Domain("no witness available".into()))?;
                write_file(path, &io::write_coloring(&c))?;
            }
            if let Some((path, text)) = dump {
                write_file(&path, &text)?;
            }
            Ok(format!("{b}\n"))
        }
        Cmd::Dominance { file, dump_tables } => {
            let input = ctx.load(&file)?;
            let dump = maybe_dump(&input.graph(), dump_tables.as_deref())?;
            let d = dominance_of(&ctx, &input)?;
            if let Some((path, text)) = dump {
                write_file(&path, &text)?;
            }
            Ok(dominance_lines(&d))
        }
        Cmd::Bcolor { file, k, o } => {
            let c = bcolor(&ctx, &ctx.load(&file)?, k)?;
            let text = io::write_coloring(&c);
            match o {
                Some(path) => {
                    write_file(&path, &text)?;
                    Ok(format!("classes: {}\n", c.t))
                }
                None => Ok(text),
            }
        }
        Cmd::Chain { file } => {
            let g = ctx.load_graph(&file)?;
            let (_, top) = bcoloring::b_chromatic_stability2(&g, ctx.budget.max_n)?;
            let mut out = String::new();
            for c in bcoloring::continuity_chain(&g, &top)? {
                let colors: Vec<String> = c.colors.iter().map(usize::to_string).collect();
                writeln!(out, "{}: {}", c.t, colors.join(" ")).unwrap();
            }
            Ok(out)
        }
        Cmd::Verify { graph, coloring } => {
            let g = ctx.load_graph(&graph)?;
            let c = io::parse_coloring(&read_text(&coloring)?, g.n())?;
            let v = bcoloring::verify_coloring(&g, &c)?;
            let mut out = format!("B-COLORING {}\n", yn(v.is_b_coloring));
            for (class, w) in v.witnesses {
                writeln!(out, "dominant {class} witness {w}").unwrap();
            }
            Ok(out)
        }
        Cmd::Reduce { file, o } => {
            let g = ctx.load_graph(&file)?;
            let gadget = reduction::build_gadget(&g)?;
            let mut map = o.clone().into_os_string();
            map.push(".map");
            let edges = io::write_edge_list(&gadget.host);
            let map_text = io::write_gadget_map(&gadget);
            write_file(&o, &edges)?;
            write_file(Path::new(&map), &map_text)?;
            Ok(format!(
                "vertices: {}\nedges: {}\nmap: {}\n",
                gadget.host.n(),
                gadget.host.edge_count(),
                Path::new(&map).display()
            ))
        }
        Cmd::Certify { file, budget } => {
            let g = ctx.load_graph(&file)?;
            let r = reduction::certify_reduction(&g, budget)?;
            Ok(format!(
                "source-edges: {}\nmin-maximal-matching: {}\nmin-smm-gadget: {}\nmethod: {}\nholds: {}\n",
                r.source_edges,
                r.min_maximal,
                r.min_smm_gadget,
                r.method,
                yn(r.holds)
            ))
        }
        Cmd::Oracle { quantity, file, k } => {
            let g = ctx.load_graph(&file)?;
            oracle_query(&ctx, quantity, &g, k)
        }
        Cmd::Bench { sizes, table_sizes } => bench(&ctx, &sizes, &table_sizes),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
