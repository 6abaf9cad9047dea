//! JSON instance files.
//!
//! ```text
//! {"kind":"cycle_triangles","n":2,"triangles":[[0,2,4],[1,3,5]]}
//! {"kind":"partitioned","parts":[[0,1,2],[3,4,5]],"edges":[[0,3],[0,4],[1,3],[1,4]]}
//! {"kind":"chords","points":6,"polygons":[[0,2,4],[1,3,5]]}
//! ```
//!
//! Files are written compactly on one line with a trailing newline; edges
//! are written smaller endpoint first and sorted.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, FormatError, Result};
use crate::model::{ChordSystem, CycleTrianglesInstance, PartitionedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    CycleTriangles(CycleTrianglesInstance),
    Partitioned(PartitionedGraph),
    Chords(ChordSystem),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::CycleTriangles(_) => "cycle_triangles",
            Instance::Partitioned(_) => "partitioned",
            Instance::Chords(_) => "chords",
        }
    }
}

impl From<CycleTrianglesInstance> for Instance {
    fn from(v: CycleTrianglesInstance) -> Self {
        Instance::CycleTriangles(v)
    }
}

impl From<PartitionedGraph> for Instance {
    fn from(v: PartitionedGraph) -> Self {
        Instance::Partitioned(v)
    }
}

impl From<ChordSystem> for Instance {
    fn from(v: ChordSystem) -> Self {
        Instance::Chords(v)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Raw {
    CycleTriangles {
        n: usize,
        triangles: Vec<[usize; 3]>,
    },
    Partitioned {
        parts: Vec<Vec<usize>>,
        edges: Vec<[usize; 2]>,
    },
    Chords {
        points: usize,
        polygons: Vec<Vec<usize>>,
    },
}

/// 1-based line and column of the first occurrence of `"field"`.
fn locate(text: &str, field: &str) -> (usize, usize) {
    let needle = format!("\"{field}\"");
    match text.find(&needle) {
        Some(offset) => {
            let before = &text[..offset];
            let line = before.matches('\n').count() + 1;
            let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
            (line, column)
        }
        None => (1, 1),
    }
}

fn invalid(text: &str, field: &str, cause: Error) -> Error {
    let (line, column) = locate(text, field);
    Error::Format(FormatError {
        line,
        column,
        field: Some(field.to_string()),
        message: cause.to_string(),
        cause: Some(Box::new(cause)),
    })
}

pub fn from_json(text: &str) -> Result<Instance> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| {
        Error::Format(FormatError {
            line: e.line(),
            column: e.column(),
            field: None,
            message: e.to_string(),
            cause: None,
        })
    })?;
    Ok(match raw {
        Raw::CycleTriangles { n, triangles } => CycleTrianglesInstance::new(n, triangles)
            .map_err(|e| invalid(text, "triangles", e))?
            .into(),
        Raw::Partitioned { parts, edges } => {
            PartitionedGraph::new(parts, edges.into_iter().map(|[u, v]| (u, v)))
                .map_err(|e| {
                    let field = match e {
                        Error::OddSize { .. } => "parts",
                        _ => "edges",
                    };
                    invalid(text, field, e)
                })?
                .into()
        }
        Raw::Chords { points, polygons } => ChordSystem::new(points, polygons)
            .map_err(|e| invalid(text, "polygons", e))?
            .into(),
    })
}

pub fn to_json(instance: &Instance) -> String {
    let raw = match instance {
        Instance::CycleTriangles(inst) => Raw::CycleTriangles {
            n: inst.n(),
            triangles: inst.triangles().to_vec(),
        },
        Instance::Partitioned(g) => Raw::Partitioned {
            parts: g.parts().to_vec(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        },
        Instance::Chords(cs) => Raw::Chords {
            points: cs.points(),
            polygons: cs.polygons().to_vec(),
        },
    };
    let mut s = serde_json::to_string(&raw).expect("instance serialization cannot fail");
    s.push('\n');
    s
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    from_json(&fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, instance: &Instance) -> Result<()> {
    fs::write(path, to_json(instance))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_files_round_trip_bytewise() {
        for text in [
            "{\"kind\":\"cycle_triangles\",\"n\":2,\"triangles\":[[0,2,4],[1,3,5]]}\n",
            "{\"kind\":\"partitioned\",\"parts\":[[0,1,2],[3,4,5]],\"edges\":[[0,3],[0,4],[1,3],[1,4]]}\n",
            "{\"kind\":\"chords\",\"points\":6,\"polygons\":[[0,2,4],[1,3,5]]}\n",
        ] {
            assert_eq!(to_json(&from_json(text).unwrap()), text);
        }
    }

    #[test]
    fn parses_two_triangle_example() {
        let inst = from_json(r#"{"kind":"cycle_triangles","n":2,"triangles":[[0,2,4],[1,3,5]]}"#).unwrap();
        let expected = CycleTrianglesInstance::new(2, vec![[0, 2, 4], [1, 3, 5]]).unwrap();
        assert_eq!(inst, Instance::CycleTriangles(expected));
    }

    #[test]
    fn edges_are_normalized_on_write() {
        let text = r#"{"kind":"partitioned","parts":[[0,1,2],[3,4,5]],"edges":[[4,1],[3,0],[4,0],[1,3]]}"#;
        assert_eq!(
            to_json(&from_json(text).unwrap()),
            "{\"kind\":\"partitioned\",\"parts\":[[0,1,2],[3,4,5]],\"edges\":[[0,3],[0,4],[1,3],[1,4]]}\n"
        );
    }

    #[test]
    fn overlapping_triples_carry_partition_error() {
        let text = "{\"kind\":\"cycle_triangles\",\n \"n\":2,\n \"triangles\":[[0,1,2],[2,3,4]]}";
        match from_json(text).unwrap_err() {
            Error::Format(f) => {
                assert_eq!((f.line, f.column), (3, 2));
                assert_eq!(f.field.as_deref(), Some("triangles"));
                assert!(matches!(f.cause.as_deref(), Some(Error::Partition(_))));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_report_position() {
        match from_json("{\"kind\":\"chords\",\n\"points\":}").unwrap_err() {
            Error::Format(f) => assert_eq!(f.line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(from_json(r#"{"kind":"nope"}"#), Err(Error::Format(_))));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        let inst: Instance = PartitionedGraph::random(&[3, 5, 1], 11).into();
        write_instance(&path, &inst).unwrap();
        assert_eq!(read_instance(&path).unwrap(), inst);
        assert!(matches!(read_instance(dir.path().join("missing.json")), Err(Error::Io(_))));
    }
}
