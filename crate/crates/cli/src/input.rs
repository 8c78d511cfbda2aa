use distchroma::corpus::{read_graph6, CorpusError};
use distchroma::formats::parse_edge_list;
use distchroma::generators::GraphClass;
use distchroma::Graph;
use std::io::Cursor;
use std::path::Path;

use crate::CliError;

/// Orders above this get a warning: the exact solvers are exponential.
const LARGE_ORDER: usize = 5000;

pub struct Item {
    pub id: String,
    pub graph: Graph,
}

/// An existing file is read as graph6 (one graph per line) unless
/// `edge_list` is set; anything else must be a named graph spec.
pub fn load(input: &str, edge_list: bool) -> Result<Vec<Item>, CliError> {
    let items = load_items(input, edge_list)?;
    for item in items.iter().filter(|i| i.graph.order() > LARGE_ORDER) {
        eprintln!("warning: {} has {} vertices; exact computations will not finish", item.id, item.graph.order());
    }
    Ok(items)
}

fn load_items(input: &str, edge_list: bool) -> Result<Vec<Item>, CliError> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{input}: {e}")))?;
        let stem = path.file_name().map_or_else(|| input.to_string(), |s| s.to_string_lossy().into_owned());
        if edge_list {
            let graph = parse_edge_list(&text).map_err(|e| CliError::Input(format!("{input}: {e}")))?;
            return Ok(vec![Item { id: stem, graph }]);
        }
        let graphs = read_graph6(Cursor::new(text)).map_err(|e| match e {
            CorpusError::Graph6 { line, source } => CliError::Input(format!("{input}:{line}: {source}")),
            other => CliError::Input(format!("{input}: {other}")),
        })?;
        return Ok(graphs
            .into_iter()
            .map(|(line, graph)| Item {
                id: format!("{stem}:{line}"),
                graph,
            })
            .collect());
    }
    let class: GraphClass = input
        .parse()
        .map_err(|_| CliError::Input(format!("{input}: neither a readable file nor a graph spec")))?;
    let graph = class.generate().map_err(|e| CliError::Input(format!("{input}: {e}")))?;
    Ok(vec![Item {
        id: input.to_string(),
        graph,
    }])
}
