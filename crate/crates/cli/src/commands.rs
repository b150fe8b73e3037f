use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use tln_core::chirotope::{cocircuit, Chirotope, SignMap};
use tln_core::dot::{bifurcation_dot, mutation_dot};
use tln_core::dynamics::{integrate, stability};
use tln_core::exact::{format_exact, format_fixed, parse_rational};
use tln_core::fixed_points::{fixed_point_detail, fixed_point_supports, Status, Support};
use tln_core::mutations::{
    atlas_entry, bifurcation_graph, classify_mutations, gp_check, mutation_graph, sweep, unlock_path, AtlasOptions,
    ExploreOptions, SearchBudget, SweepEvent,
};
use tln_core::network::{isomorphism_classes, read_network, Digraph, Network, Param, ParamPath};

use crate::{Cli, Command};

fn load(path: &Path) -> Result<Network> {
    read_network(path).with_context(|| format!("reading {}", path.display()))
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn explore_options(cli: &Cli, budget: usize) -> ExploreOptions {
    ExploreOptions { seed: cli.seed, budget: SearchBudget { evaluations: budget }, ..Default::default() }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Fp { network, detail } => fp(&load(network)?, *detail),
        Command::Chirotope { network } => chirotope(&load(network)?),
        Command::Cocircuits { network } => cocircuits(&load(network)?),
        Command::Graph { network } => graph(&load(network)?),
        Command::Mutations { network, realize, budget } => {
            let opts = explore_options(cli, *budget);
            mutations(&load(network)?, realize.then_some(&opts))
        }
        Command::Explore { graph, budget, out } => explore(graph, &explore_options(cli, *budget), out.as_deref()),
        Command::Atlas { samples, budget, out } => {
            atlas(&AtlasOptions { samples: *samples, explore: explore_options(cli, *budget) }, out)
        }
        Command::Sweep { network, param, to, tol, steps, all, out } => {
            let param: Param = param.parse()?;
            let path = ParamPath::new(load(network)?, param, parse_rational(to)?, *steps)?;
            let events = sweep(&path, &parse_rational(tol)?)?;
            let events: Vec<SweepEvent> = events.into_iter().filter(|e| *all || e.changes_fp()).collect();
            write_sweep(&events, sink(out.as_deref())?)
        }
        Command::Simulate { network, x0, t, dt, every, out } => {
            simulate(&load(network)?, x0.as_deref(), *t, *dt, *every, out.as_deref())
        }
        Command::GpCheck { network } => {
            let report = gp_check(&load(network)?);
            emit(&format!("{report}\n"))?;
            if let Some(rel) = report.nonzero.first() {
                bail!("relation fails: {}", rel.describe(load(network)?.n()));
            }
            Ok(())
        }
        Command::Unlock { network, target } => {
            if *target == 0 {
                bail!("neurons are numbered from 1");
            }
            emit(&unlock_path(&load(network)?, target - 1)?.to_string())?;
            Ok(())
        }
    }
}

fn fp(net: &Network, detail: bool) -> Result<()> {
    let fam = fixed_point_supports(net)?;
    let mut w = sink(None)?;
    if !detail {
        for s in fam.iter() {
            writeln!(w, "{s}")?;
        }
        return Ok(w.flush()?);
    }
    for sigma in Support::all(net.n()).into_iter().filter(|s| !s.is_empty()) {
        let p = fixed_point_detail(net, sigma)?;
        write!(w, "{p}")?;
        if p.status == Status::Admissible {
            let st = stability(net, sigma)?;
            write!(w, "  {:?} (max Re λ = {:.6})", st.class, st.max_real)?;
        }
        writeln!(w)?;
    }
    writeln!(w, "FP = {fam}")?;
    Ok(w.flush()?)
}

fn chirotope(net: &Network) -> Result<()> {
    let chi = Chirotope::of(net);
    let mut w = sink(None)?;
    for b in chi.bases() {
        writeln!(w, "{}\t{}", b.name(net.n()), chi.base_sign(b).symbol())?;
    }
    writeln!(w, "simplicial: {}", if chi.is_simplicial() { "yes" } else { "no" })?;
    Ok(w.flush()?)
}

fn cocircuits(net: &Network) -> Result<()> {
    let chi = Chirotope::of(net);
    let mut w = sink(None)?;
    let header: Vec<String> = (1..=net.n()).flat_map(|i| [format!("E{i}"), format!("H{i}")]).collect();
    writeln!(w, "σ\t({})", header.join(","))?;
    for sigma in Support::all(net.n()) {
        match cocircuit(&chi, sigma) {
            Ok(c) => writeln!(w, "{sigma}\t{c}{}", if c.is_fixed_point() && !sigma.is_empty() { "\tfixed point" } else { "" })?,
            Err(e) if e.is_degenerate() => writeln!(w, "{sigma}\t{e}")?,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(w.flush()?)
}

fn graph(net: &Network) -> Result<()> {
    let g = net.graph()?;
    let list = |v: Vec<usize>| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        }
    };
    let mut w = sink(None)?;
    writeln!(w, "{g}")?;
    writeln!(w, "sinks: {}", list(g.sinks()))?;
    writeln!(w, "separating: {}", list((0..g.n()).filter(|&m| g.is_separating(m)).collect()))?;
    w.flush()?;
    Ok(())
}

fn mutations(net: &Network, search: Option<&ExploreOptions>) -> Result<()> {
    let rows = classify_mutations(net, search)?;
    let mut w = sink(None)?;
    for r in rows {
        let pin = match r.pinned {
            Some(s) => format!("pinned {}", s.symbol()),
            None => "free".to_string(),
        };
        write!(w, "{}\t{}\t{}\t{pin}", r.basis.name(net.n()), r.sign.symbol(), if r.mutation { "mutation" } else { "-" })?;
        if let Some(m) = r.flip.filter(|_| search.is_some()) {
            write!(w, "\trealizable {}", m.realizable)?;
        }
        writeln!(w)?;
    }
    Ok(w.flush()?)
}

fn explore(graph: &str, opts: &ExploreOptions, out: Option<&Path>) -> Result<()> {
    let g = Digraph::parse(graph, 3)?;
    let mg = mutation_graph(&g, opts)?;
    let bg = bifurcation_graph(&mg);
    let mdot = mutation_dot(&mg);
    let bdot = bifurcation_dot(&bg, &format!("bifurcation graph of {g}"));
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("mutation.dot"), mdot)?;
            fs::write(dir.join("bifurcation.dot"), bdot)?;
        }
        None => emit(&format!("{mdot}{bdot}"))?,
    }
    eprintln!(
        "{} chirotopes, {} flips, {} unknown; {} regimes",
        mg.nodes.len(),
        mg.edges.len(),
        mg.unknown.len(),
        bg.nodes.len()
    );
    Ok(())
}

fn atlas(opts: &AtlasOptions, out: &Path) -> Result<()> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut summary = String::new();
    let mut robust = 0;
    for (t, g) in isomorphism_classes(3)?.iter().enumerate() {
        let entry = atlas_entry(t + 1, g, opts)?;
        let stem = format!("graph{:02}", entry.index);
        fs::write(out.join(format!("{stem}.txt")), entry.to_string())?;
        let title = format!("graph {}: {}", entry.index, entry.graph);
        fs::write(out.join(format!("{stem}.dot")), bifurcation_dot(&entry.bifurcation, &title))?;
        robust += usize::from(entry.robust());
        let regimes: Vec<String> = entry.regimes.iter().map(ToString::to_string).collect();
        summary.push_str(&format!(
            "{:2}  {:<28} {} regime(s){}  {}\n",
            entry.index,
            entry.graph.to_string(),
            entry.regimes.len(),
            if entry.robust() { ", robust" } else { "" },
            regimes.join(" ")
        ));
    }
    summary.push_str(&format!("{robust} robust of 16\n"));
    fs::write(out.join("summary.txt"), &summary)?;
    emit(&summary)?;
    Ok(())
}

fn write_sweep(events: &[SweepEvent], out: Box<dyn Write>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lo", "hi", "lo_decimal", "hi_decimal", "fp_before", "fp_after", "crossed"])?;
    for e in events {
        w.write_record([
            format_exact(&e.lo),
            format_exact(&e.hi),
            format_fixed(&e.lo, 6),
            format_fixed(&e.hi, 6),
            e.before.to_string(),
            e.after.to_string(),
            e.crossed.join(" "),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn simulate(net: &Network, x0: Option<&str>, t: f64, dt: f64, every: usize, out: Option<&Path>) -> Result<()> {
    let x0: Vec<f64> = match x0 {
        Some(s) => s.split(',').map(|v| v.trim().parse::<f64>().with_context(|| format!("bad coordinate {v:?}"))).collect::<Result<_>>()?,
        None => vec![0.0; net.n()],
    };
    if every == 0 {
        bail!("--every must be at least 1");
    }
    let traj = integrate(net, &x0, t, dt)?;
    let mut w = csv::Writer::from_writer(sink(out)?);
    let mut header = vec!["t".to_string()];
    header.extend((1..=net.n()).map(|i| format!("x{i}")));
    w.write_record(&header)?;
    let last = traj.times.len() - 1;
    for (k, (time, x)) in traj.times.iter().zip(&traj.states).enumerate() {
        if k % every == 0 || k == last {
            let mut row = vec![format!("{time}")];
            row.extend(x.iter().map(|v| format!("{v}")));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}
