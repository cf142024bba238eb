use daglca_core::io::{write_bool_matrix, write_dag_json, write_dag_text, write_four_partite, write_hypergraph};
use daglca_core::reductions::{default_group_names, random_four_partite, random_partite_hypergraph};
use daglca_core::{random_bool_matrix, random_dag, random_layered_dag, Dag};

use crate::args::{DagFormat, GenKind};
use crate::error::{CliError, Result};
use crate::output::emit;

fn dag_text(g: &Dag, format: DagFormat) -> String {
    match format {
        DagFormat::Json => write_dag_json(g),
        DagFormat::Text => write_dag_text(g),
    }
}

pub fn gen(kind: GenKind) -> Result<()> {
    let (text, common, summary) = match kind {
        GenKind::RandomDag { n, p, format, common } => {
            let g = random_dag(n, p, common.seed)?;
            (dag_text(&g, format), common, format!("n={} m={}", g.n(), g.m()))
        }
        GenKind::Layered {
            layers,
            p,
            format,
            common,
        } => {
            let g = random_layered_dag(&layers, p, common.seed)?;
            (dag_text(&g, format), common, format!("n={} m={}", g.n(), g.m()))
        }
        GenKind::Hypergraph { parts, p, common } => {
            if parts.len() < 2 || parts.len() > 26 {
                return Err(CliError::Usage(format!(
                    "--parts needs 2 to 26 groups, got {}",
                    parts.len()
                )));
            }
            let names = default_group_names(parts.len());
            let groups: Vec<(&str, usize)> = names.iter().map(String::as_str).zip(parts).collect();
            let h = random_partite_hypergraph(&groups, p, common.seed)?;
            (write_hypergraph(&h), common, format!("n={} m={}", h.n(), h.m()))
        }
        GenKind::Fourpartite { parts, p, common } => {
            let sizes: [usize; 4] = parts
                .try_into()
                .map_err(|v: Vec<usize>| CliError::Usage(format!("--parts needs 4 sizes, got {}", v.len())))?;
            let g = random_four_partite(sizes, p, common.seed)?;
            (
                write_four_partite(&g),
                common,
                format!("n={} m={}", g.n(), g.edges().len()),
            )
        }
        GenKind::Matrix { rows, cols, p, common } => {
            let m = random_bool_matrix(rows, cols, p, common.seed)?;
            (
                write_bool_matrix(&m),
                common,
                format!("rows={rows} cols={cols} ones={}", m.count_ones()),
            )
        }
    };
    emit(common.out.as_deref(), &text)?;
    eprintln!("{summary} seed={}", common.seed);
    Ok(())
}
