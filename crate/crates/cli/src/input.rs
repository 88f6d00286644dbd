use std::io::Read;
use std::path::Path;

use vizing_core::format::{detect_kind, parse_binary_matrix, parse_edge_list, parse_graph6, InputKind};
use vizing_core::graph::Graph;
use vizing_core::kregular::BinaryMatrix;

use crate::{Failure, InputFormat};

pub struct Loaded {
    pub graph: Graph,
    /// a1..an, b1..bn for biadjacency input
    pub labels: Option<Vec<String>>,
}

impl Loaded {
    pub fn label_set(&self, vertices: &[usize]) -> Option<Vec<String>> {
        self.labels
            .as_ref()
            .map(|l| vertices.iter().map(|&v| l[v].clone()).collect())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path, format: InputFormat) -> Result<Loaded, Failure> {
    let text = read(path)?;
    let kind = match format {
        InputFormat::Auto => detect_kind(&text),
        InputFormat::Graph6 => InputKind::Graph6,
        InputFormat::EdgeList => InputKind::EdgeList,
        InputFormat::Matrix => InputKind::Matrix,
    };
    let at = |e: vizing_core::error::Error| Failure::Input(format!("{}: {e}", path.display()));
    match kind {
        InputKind::Graph6 => {
            let mut lines = text.lines().filter(|l| !l.trim().is_empty());
            let first = lines.next().unwrap_or("");
            if lines.next().is_some() {
                return Err(Failure::Input(format!("{}: expected a single graph6 line", path.display())));
            }
            Ok(Loaded {
                graph: parse_graph6(first).map_err(at)?,
                labels: None,
            })
        }
        InputKind::EdgeList => Ok(Loaded {
            graph: parse_edge_list(&text).map_err(at)?,
            labels: None,
        }),
        InputKind::Matrix => {
            let m = BinaryMatrix::from_rows(&parse_binary_matrix(&text).map_err(at)?).map_err(at)?;
            let n = m.n();
            let labels = (1..=n).map(|i| format!("a{i}")).chain((1..=n).map(|j| format!("b{j}"))).collect();
            Ok(Loaded {
                graph: m.to_graph(),
                labels: Some(labels),
            })
        }
    }
}
