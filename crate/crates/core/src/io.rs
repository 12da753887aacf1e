//! JSON file formats.
//!
//! Matrix files hold a square matrix row-major:
//!
//! ```json
//! {
//!   "size": 2,
//!   "entries": [
//!     [1.0, 1.0],
//!     [-1.0, -1.0],
//!     [-1.0, -1.0],
//!     [1.0, 1.0]
//!   ]
//! }
//! ```
//!
//! Vector files use the same layout with `size` entries. Network files list
//! `boundary_count`, `interior_count` and `edges`, each edge being
//! `{"u": 0, "v": 1, "conductance": [re, im]}`. Complex numbers are always
//! `[re, im]` arrays. Writers emit keys in a fixed order and the shortest
//! decimal that round-trips each double, so output is byte-for-byte
//! reproducible.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::network::{Edge, Network};
use crate::numerics::ComplexMatrix;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    size: usize,
    entries: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    u: usize,
    v: usize,
    conductance: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    boundary_count: usize,
    interior_count: usize,
    edges: Vec<EdgeRecord>,
}

fn number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite f64 serializes")
}

fn complex(z: Complex64) -> String {
    format!("[{}, {}]", number(z.re), number(z.im))
}

fn parse_error(path: &Path, err: serde_json::Error) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line: err.line(),
        column: err.column(),
        reason: err.to_string(),
    }
}

/// Position of the first occurrence of `key` in `text`, 1-based.
fn locate(text: &str, key: &str) -> (usize, usize) {
    let offset = text.find(&format!("\"{key}\"")).unwrap_or(0);
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

fn semantic_error(path: &Path, text: &str, key: &str, reason: String) -> Error {
    let (line, column) = locate(text, key);
    Error::Parse {
        path: path.to_path_buf(),
        line,
        column,
        reason,
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn entries_json(size: usize, values: &[Complex64]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{\n  \"size\": {size},\n  \"entries\": [");
    for (i, &z) in values.iter().enumerate() {
        let sep = if i + 1 < values.len() { "," } else { "" };
        let _ = writeln!(out, "    {}{sep}", complex(z));
    }
    out.push_str("  ]\n}\n");
    out
}

fn entries_from_json(
    text: &str,
    origin: &Path,
    expected: impl Fn(usize) -> usize,
) -> Result<(usize, Vec<Complex64>)> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    if file.size == 0 {
        return Err(semantic_error(
            origin,
            text,
            "size",
            "size must be at least 1".into(),
        ));
    }
    let want = expected(file.size);
    if file.entries.len() != want {
        return Err(semantic_error(
            origin,
            text,
            "entries",
            format!(
                "expected {want} entries for size {}, found {}",
                file.size,
                file.entries.len()
            ),
        ));
    }
    Ok((
        file.size,
        file.entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    ))
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Result<String> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::Shape(format!(
            "matrix files hold non-empty square matrices, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    m.check_finite()?;
    Ok(entries_json(m.rows(), m.as_slice()))
}

/// Parses a matrix file; `origin` names the source in error messages.
pub fn matrix_from_json(text: &str, origin: &Path) -> Result<ComplexMatrix> {
    let (size, values) = entries_from_json(text, origin, |s| s * s)?;
    ComplexMatrix::from_row_major(size, size, values)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let path = path.as_ref();
    matrix_from_json(&read_text(path)?, path)
}

pub fn write_matrix(m: &ComplexMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &matrix_to_json(m)?)
}

pub fn vector_to_json(v: &[Complex64]) -> Result<String> {
    if v.is_empty() {
        return Err(Error::Shape("vector files hold at least one entry".into()));
    }
    if let Some(p) = v
        .iter()
        .position(|z| !(z.re.is_finite() && z.im.is_finite()))
    {
        return Err(Error::NonFinite { row: p, col: 0 });
    }
    Ok(entries_json(v.len(), v))
}

pub fn vector_from_json(text: &str, origin: &Path) -> Result<Vec<Complex64>> {
    entries_from_json(text, origin, |s| s).map(|(_, v)| v)
}

pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<Complex64>> {
    let path = path.as_ref();
    vector_from_json(&read_text(path)?, path)
}

pub fn write_vector(v: &[Complex64], path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &vector_to_json(v)?)
}

/// Edges are written with `u <= v`, sorted by `(u, v)`.
pub fn network_to_json(net: &Network) -> Result<String> {
    let edges = net.sorted_edges();
    if let Some(p) = edges
        .iter()
        .position(|e| !(e.conductance.re.is_finite() && e.conductance.im.is_finite()))
    {
        return Err(Error::NonFinite { row: p, col: 0 });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{{\n  \"boundary_count\": {},\n  \"interior_count\": {},\n  \"edges\": [",
        net.boundary_count, net.interior_count
    );
    for (i, e) in edges.iter().enumerate() {
        let sep = if i + 1 < edges.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    {{\"u\": {}, \"v\": {}, \"conductance\": {}}}{sep}",
            e.u,
            e.v,
            complex(e.conductance)
        );
    }
    out.push_str("  ]\n}\n");
    Ok(out)
}

/// Parses a network file, summing parallel edges. The result is not
/// validated; see [`crate::network::validate_network`].
pub fn network_from_json(text: &str, origin: &Path) -> Result<Network> {
    let file: NetworkFile = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    let edges = file
        .edges
        .iter()
        .map(|r| Edge::new(r.u, r.v, Complex64::new(r.conductance[0], r.conductance[1])));
    Ok(Network::with_parallel_edges_summed(
        file.boundary_count,
        file.interior_count,
        edges,
    ))
}

pub fn read_network(path: impl AsRef<Path>) -> Result<Network> {
    let path = path.as_ref();
    network_from_json(&read_text(path)?, path)
}

pub fn write_network(net: &Network, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &network_to_json(net)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin() -> &'static Path {
        Path::new("test.json")
    }

    #[test]
    fn worked_example_matrix_parses() {
        let text = r#"{"size": 3, "entries": [[2,0],[1,0],[-3,0],[1,0],[2,0],[-3,0],[-3,0],[-3,0],[6,0]]}"#;
        let m = matrix_from_json(text, origin()).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m[(2, 2)], Complex64::new(6.0, 0.0));
        assert_eq!(m.im().max_abs(), 0.0);
    }

    #[test]
    fn empty_matrix_rejected() {
        let err = matrix_from_json(r#"{"size": 0, "entries": []}"#, origin()).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 1,
                    column: 2,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn size_mismatch_reports_position() {
        let text = "{\n  \"size\": 2,\n  \"entries\": [[1, 0]]\n}";
        match matrix_from_json(text, origin()).unwrap_err() {
            Error::Parse {
                line,
                column,
                reason,
                ..
            } => {
                assert_eq!((line, column), (3, 3));
                assert!(reason.contains("expected 4 entries"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        let text = "{\n  \"size\": 2,\n  \"entries\": [[1, 0],]\n}";
        assert!(matches!(
            matrix_from_json(text, origin()),
            Err(Error::Parse { line: 3, .. })
        ));
        // complex numbers are arrays, never strings
        let text = r#"{"size": 1, "entries": ["1+1i"]}"#;
        assert!(matrix_from_json(text, origin()).is_err());
        // overflowing literal
        let text = r#"{"size": 1, "entries": [[1e999, 0]]}"#;
        assert!(matrix_from_json(text, origin()).is_err());
    }

    #[test]
    fn exact_output_bytes() {
        let c = Complex64::new(1.0, 1.0);
        let m = crate::characterize::two_terminal(c);
        assert_eq!(
            matrix_to_json(&m).unwrap(),
            "{\n  \"size\": 2,\n  \"entries\": [\n    [1.0, 1.0],\n    [-1.0, -1.0],\n    [-1.0, -1.0],\n    [1.0, 1.0]\n  ]\n}\n"
        );
        let net = Network::single_edge(Complex64::new(0.1, -2.5e-20));
        assert_eq!(
            network_to_json(&net).unwrap(),
            "{\n  \"boundary_count\": 2,\n  \"interior_count\": 0,\n  \"edges\": [\n    {\"u\": 0, \"v\": 1, \"conductance\": [0.1, -2.5e-20]}\n  ]\n}\n"
        );
    }

    #[test]
    fn non_finite_not_written() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = Complex64::new(f64::INFINITY, 0.0);
        assert!(matrix_to_json(&m).is_err());
        assert!(matrix_to_json(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn single_edge_network_file() {
        let text = r#"{"boundary_count": 2, "interior_count": 0, "edges": [{"u": 1, "v": 0, "conductance": [1, 1]}]}"#;
        let net = network_from_json(text, origin()).unwrap();
        assert_eq!(net, Network::single_edge(Complex64::new(1.0, 1.0)));
    }

    #[test]
    fn parallel_edges_in_file_are_summed() {
        let text = r#"{"boundary_count": 2, "interior_count": 0, "edges": [
            {"u": 0, "v": 1, "conductance": [1, 1]},
            {"u": 1, "v": 0, "conductance": [2, -1]}]}"#;
        let net = network_from_json(text, origin()).unwrap();
        assert_eq!(net.edges.len(), 1);
        assert_eq!(net.edges[0].conductance, Complex64::new(3.0, 0.0));
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"size": 1, "entries": [[1, 0]], "extra": 1}"#;
        assert!(matrix_from_json(text, origin()).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let v = vec![Complex64::new(1.0, 0.0), Complex64::new(-0.0, 3.5)];
        let back = vector_from_json(&vector_to_json(&v).unwrap(), origin()).unwrap();
        assert_eq!(back[1].re.to_bits(), (-0.0f64).to_bits());
        assert_eq!(back, v);
        assert!(vector_to_json(&[]).is_err());
    }
}
