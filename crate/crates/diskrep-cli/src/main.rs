use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use diskrep::caterpillar::{construct_caterpillar_udr, recognize_caterpillar, ConstructionParams};
use diskrep::gadgets::{self, GadgetGraph, Variant};
use diskrep::geometry::{
    export_svg, fmt_sig, hausdorff_to_union, parse_disk_layout, parse_grid_layout, verify_udr, verify_weak_udc_grid,
    write_disk_layout, write_grid_layout, DiskLayout, SvgOptions, VerifyResult, DEFAULT_TAU,
};
use diskrep::graph::parse_graph;
use diskrep::lobster::{brute_force_enumerate, dp_recognize, induction_case_report, BruteOptions, ReportOptions};
use diskrep::{classify_tree, Graph};

#[derive(Parser)]
#[command(name = "diskrep", version, about = "Unit disk representations of caterpillars and lobsters")]
struct Cli {
    /// Print results as a JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Udr,
    WudcGrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ladder,
    Rhombus,
    Hexagon,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Outerplanar,
    Tree,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report whether the graph is a caterpillar, a lobster, another tree or not a tree.
    Classify { graph: PathBuf },
    /// Decide whether a caterpillar has a unit disk intersection representation.
    RecognizeCaterpillar { graph: PathBuf },
    /// Build a unit disk layout for a caterpillar.
    ConstructCaterpillar {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Per-vertex angular lean; defaults depend on the instance.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Decide a lobster on the triangular grid with the linear-time program.
    RecognizeLobster {
        graph: PathBuf,
        /// Write the witness grid layout here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count grid layouts of a lobster by exhaustive search.
    Enumerate {
        graph: PathBuf,
        #[arg(long, default_value_t = diskrep::lobster::DEFAULT_BOUND)]
        bound: i32,
        /// Write the report here as well.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the induction step over every reachable window state.
    InductionReport {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// List this many individual cases.
        #[arg(long, default_value_t = 0)]
        list: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a gadget graph with its intended layout.
    Gadget {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "outerplanar")]
        variant: VariantArg,
        /// Writes PREFIX.graph, PREFIX.layout and PREFIX.ports.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a layout against a graph.
    Verify {
        #[arg(long, value_enum)]
        model: Model,
        graph: PathBuf,
        layout: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
    },
    /// Render a layout as SVG.
    ExportSvg {
        graph: PathBuf,
        layout: PathBuf,
        #[arg(long, value_enum, default_value = "udr")]
        model: Model,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 20.0)]
        scale: f64,
    },
}

/// Ordered report fields, printed as text lines or one JSON object.
#[derive(Default)]
struct Out {
    fields: Map<String, Value>,
}

impl Out {
    fn put(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    fn emit(&self, json: bool) {
        if json {
            say(&format!("{}\n", Value::Object(self.fields.clone())));
            return;
        }
        let mut text = String::new();
        for (k, v) in &self.fields {
            let items = match v {
                Value::Array(items) => items.clone(),
                other => vec![other.clone()],
            };
            for item in items {
                match item {
                    Value::String(s) => text.push_str(&format!("{k}: {s}\n")),
                    other => text.push_str(&format!("{k}: {other}\n")),
                }
            }
        }
        say(&text);
    }
}

/// Writes to stdout; a closed pipe is not an error worth reporting.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_layout(path: &Path, model: Model) -> Result<DiskLayout, String> {
    let text = read(path)?;
    let parsed = match model {
        Model::Udr => parse_disk_layout(&text),
        Model::WudcGrid => parse_grid_layout(&text).map(|l| l.to_disk_layout()),
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn lib_err(e: diskrep::Error) -> String {
    e.to_string()
}

fn put_verify(out: &mut Out, r: &VerifyResult) {
    out.put("result", if r.ok { "ok" } else { "violations" });
    out.put("violations", r.violations.len());
    let lines: Vec<Value> = r
        .violations
        .iter()
        .map(|v| Value::String(format!("{} {} {} {}", v.kind.as_str(), v.u, v.v, fmt_sig(v.distance, 12))))
        .collect();
    if !lines.is_empty() {
        out.put("violation", lines);
    }
}

fn gadget(kind: Kind, k: usize, variant: Variant) -> Result<(GadgetGraph, Option<f64>), String> {
    let step = 0.05;
    let (g, target) = match kind {
        Kind::Ladder if variant == Variant::Tree => (gadgets::chain(k), None),
        Kind::Ladder => (gadgets::ladder(k), None),
        Kind::Rhombus => (gadgets::rhombus_approx(k, variant), Some(gadgets::rhombus_target(k))),
        Kind::Hexagon => (gadgets::hexagon_approx(k, variant), Some(gadgets::hexagon_target(k))),
    };
    let g = g.map_err(lib_err)?;
    let h = match target {
        Some(poly) => Some(hausdorff_to_union(&poly, &g.intended, step).map_err(lib_err)?),
        None => None,
    };
    Ok((g, h))
}

fn run(cli: Cli) -> Result<u8, String> {
    let mut out = Out::default();
    let code = match cli.cmd {
        Cmd::Classify { graph } => {
            let g = load_graph(&graph)?;
            let tc = classify_tree(&g);
            out.put("class", tc.kind.as_str()).put("vertices", g.n()).put("backbone", tc.backbone.len());
            0
        }
        Cmd::RecognizeCaterpillar { graph } => {
            let g = load_graph(&graph)?;
            let d = recognize_caterpillar(&g).map_err(lib_err)?;
            out.put("answer", yes_no(d.yes));
            if let Some(r) = d.reason {
                out.put("reason", r.to_string());
            }
            u8::from(!d.yes)
        }
        Cmd::ConstructCaterpillar { graph, output, svg, epsilon } => {
            let g = load_graph(&graph)?;
            let d = recognize_caterpillar(&g).map_err(lib_err)?;
            out.put("answer", yes_no(d.yes));
            if let Some(r) = d.reason {
                out.put("reason", r.to_string());
                1
            } else {
                let mut p = ConstructionParams::for_graph(&g);
                if let Some(e) = epsilon {
                    p.epsilon = e;
                    p.mu = p.mu.min(e / 100.0);
                }
                let layout = construct_caterpillar_udr(&g, &p).map_err(lib_err)?;
                let r = verify_udr(&g, &layout, DEFAULT_TAU).map_err(lib_err)?;
                put_verify(&mut out, &r);
                if let Some(path) = &output {
                    write(path, &write_disk_layout(&layout))?;
                    out.put("layout", path.display().to_string());
                }
                if let Some(path) = &svg {
                    write(path, &export_svg(&g, &layout, &SvgOptions::default()).map_err(lib_err)?)?;
                    out.put("svg", path.display().to_string());
                }
                u8::from(!r.ok)
            }
        }
        Cmd::RecognizeLobster { graph, output } => {
            let g = load_graph(&graph)?;
            let tc = classify_tree(&g);
            let d = dp_recognize(&g, &tc).map_err(lib_err)?;
            out.put("answer", yes_no(d.yes));
            out.put("max-frontier", d.frontier_sizes.iter().copied().max().unwrap_or(0));
            if let (Some(w), Some(path)) = (&d.witness, &output) {
                write(path, &write_grid_layout(w))?;
                out.put("layout", path.display().to_string());
            }
            u8::from(!d.yes)
        }
        Cmd::Enumerate { graph, bound, output } => {
            let g = load_graph(&graph)?;
            let tc = classify_tree(&g);
            let r = brute_force_enumerate(&g, &tc, BruteOptions { bound, max_witnesses: 0, first_only: false })
                .map_err(lib_err)?;
            out.put("vertices", g.n()).put("bound", bound).put("feasible", yes_no(r.feasible)).put("count", r.count);
            if let Some(path) = &output {
                let text = if cli.json {
                    format!("{}\n", Value::Object(out.fields.clone()))
                } else {
                    format!(
                        "vertices: {}\nbound: {bound}\nfeasible: {}\ncount: {}\n",
                        g.n(),
                        yes_no(r.feasible),
                        r.count
                    )
                };
                write(path, &text)?;
            }
            u8::from(!r.feasible)
        }
        Cmd::InductionReport { jobs, list, output } => {
            let rep = induction_case_report(&ReportOptions { list_limit: list, jobs, ..Default::default() });
            let text = if cli.json {
                serde_json::to_string(&rep).expect("report serializes") + "\n"
            } else {
                rep.to_text()
            };
            if let Some(path) = &output {
                write(path, &text)?;
            }
            say(&text);
            return Ok(u8::from(!rep.counterexamples.is_empty()));
        }
        Cmd::Gadget { kind, k, variant, output, svg } => {
            let variant = match variant {
                VariantArg::Outerplanar => Variant::Outerplanar,
                VariantArg::Tree => Variant::Tree,
            };
            let (g, h) = gadget(kind, k, variant)?;
            out.put("vertices", g.graph.n()).put("edges", g.graph.edge_count());
            let r = verify_udr(&g.graph, &g.intended, DEFAULT_TAU).map_err(lib_err)?;
            put_verify(&mut out, &r);
            if let Some(h) = h {
                out.put("hausdorff", fmt_sig(h, 6));
            }
            if let Some(prefix) = &output {
                let with = |ext: &str| {
                    let mut p = prefix.clone().into_os_string();
                    p.push(ext);
                    PathBuf::from(p)
                };
                write(&with(".graph"), &g.graph.serialize())?;
                write(&with(".layout"), &write_disk_layout(&g.intended))?;
                write(&with(".ports"), &gadgets::write_ports(&g))?;
            }
            if let Some(path) = &svg {
                write(path, &export_svg(&g.graph, &g.intended, &SvgOptions::default()).map_err(lib_err)?)?;
            }
            u8::from(!r.ok)
        }
        Cmd::Verify { model, graph, layout, tau } => {
            let g = load_graph(&graph)?;
            let r = match model {
                Model::Udr => {
                    let l = parse_disk_layout(&read(&layout)?).map_err(|e| format!("{}: {e}", layout.display()))?;
                    verify_udr(&g, &l, tau)
                }
                Model::WudcGrid => {
                    let l = parse_grid_layout(&read(&layout)?).map_err(|e| format!("{}: {e}", layout.display()))?;
                    verify_weak_udc_grid(&g, &l)
                }
            }
            .map_err(lib_err)?;
            put_verify(&mut out, &r);
            u8::from(!r.ok)
        }
        Cmd::ExportSvg { graph, layout, model, output, scale } => {
            let g = load_graph(&graph)?;
            let l = load_layout(&layout, model)?;
            let svg = export_svg(&g, &l, &SvgOptions { scale, ..Default::default() }).map_err(lib_err)?;
            match output {
                Some(path) => {
                    write(&path, &svg)?;
                    out.put("svg", path.display().to_string());
                }
                None => {
                    say(&svg);
                    return Ok(0);
                }
            }
            0
        }
    };
    out.emit(cli.json);
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
