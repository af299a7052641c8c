//! Edge-list text ingestion and the binary cache.
//!
//! Binary cache layout, all integers little-endian:
//!
//! ```text
//! "K22G"            4 bytes magic
//! version           u8 (= 1)
//! width             u8, bytes per node id in target arrays (4 or 8)
//! n, m              u64, u64
//! out offsets       (n + 1) x u64
//! out targets       m x width
//! in offsets        (n + 1) x u64
//! in targets        m x width
//! id map            n x u64 (external id of each dense id, ascending)
//! ```

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::{Csr, DirectedGraph, NodeId};
use crate::error::{Error, Result};

pub const BINARY_MAGIC: &[u8; 4] = b"K22G";
pub const BINARY_VERSION: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    pub drop_self_loops: bool,
    pub dedup: bool,
    /// Skip building in-adjacency.
    pub single_direction: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            drop_self_loops: true,
            dedup: true,
            single_direction: false,
        }
    }
}

/// Parses "src dst" lines. Lines starting with `#` and blank lines are
/// skipped; CRLF endings are accepted. External ids are remapped to dense ids
/// in ascending external order, so line order does not matter.
pub fn load_edge_list<R: Read>(source: R, options: LoadOptions) -> Result<DirectedGraph> {
    let reader = BufReader::new(source);
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.split(b'\n').enumerate() {
        let line_no = idx + 1;
        let bytes = line?;
        let text = std::str::from_utf8(&bytes).map_err(|_| Error::Parse {
            line: line_no,
            message: "invalid UTF-8".into(),
        })?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let parsed = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => a.parse::<u64>().ok().zip(b.parse::<u64>().ok()),
            _ => None,
        };
        match parsed {
            Some(pair) => raw.push(pair),
            None => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two non-negative integers, got '{text}'"),
                })
            }
        }
    }
    if raw.is_empty() {
        return Err(Error::NoArcs);
    }

    let mut id_map: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
    id_map.sort_unstable();
    id_map.dedup();
    if id_map.len() > NodeId::MAX as usize {
        return Err(Error::TooLarge(format!(
            "{} distinct node ids exceed the 32-bit dense id space",
            id_map.len()
        )));
    }
    let dense = |x: u64| id_map.binary_search(&x).expect("id collected above") as NodeId;
    let arcs: Vec<(NodeId, NodeId)> = raw.iter().map(|&(a, b)| (dense(a), dense(b))).collect();
    drop(raw);
    Ok(DirectedGraph::build(
        id_map.clone(),
        arcs,
        options.drop_self_loops,
        options.dedup,
        !options.single_direction,
    ))
}

/// Writes one "src dst" line per arc using external ids.
pub fn write_edge_list<W: Write>(g: &DirectedGraph, mut out: W) -> Result<()> {
    let mut buf = String::new();
    for (u, v) in g.arcs() {
        use std::fmt::Write as _;
        let _ = writeln!(buf, "{} {}", g.external_id(u), g.external_id(v));
        if buf.len() > 1 << 16 {
            out.write_all(buf.as_bytes())?;
            buf.clear();
        }
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

pub fn write_binary<W: Write>(g: &DirectedGraph, out: W) -> Result<()> {
    let mut out = std::io::BufWriter::new(out);
    let n = g.node_count() as u64;
    let m = g.arc_count() as u64;
    out.write_all(BINARY_MAGIC)?;
    out.write_all(&[BINARY_VERSION, 4])?;
    out.write_all(&n.to_le_bytes())?;
    out.write_all(&m.to_le_bytes())?;
    let built;
    let inc = if g.has_in_adjacency() {
        g.in_csr()
    } else {
        built = g.out_csr().transposed();
        &built
    };
    for csr in [g.out_csr(), inc] {
        for &o in csr.offsets() {
            out.write_all(&o.to_le_bytes())?;
        }
        for &t in csr.targets() {
            out.write_all(&t.to_le_bytes())?;
        }
    }
    for &id in g.id_map() {
        out.write_all(&id.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Format("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn node(&mut self, width: u8) -> Result<NodeId> {
        match width {
            4 => Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap())),
            _ => {
                let v = self.u64()?;
                NodeId::try_from(v)
                    .map_err(|_| Error::TooLarge(format!("node id {v} exceeds 32 bits")))
            }
        }
    }
}

fn read_csr(cur: &mut Cursor<'_>, n: usize, m: usize, width: u8) -> Result<Csr> {
    let offsets = (0..=n).map(|_| cur.u64()).collect::<Result<Vec<_>>>()?;
    if offsets[0] != 0
        || offsets[n] != m as u64
        || offsets.windows(2).any(|w| w[0] > w[1])
    {
        return Err(Error::Format("offsets are not a monotone prefix sum".into()));
    }
    let targets = (0..m).map(|_| cur.node(width)).collect::<Result<Vec<_>>>()?;
    if targets.iter().any(|&t| t as usize >= n) {
        return Err(Error::Format("target out of range".into()));
    }
    Ok(Csr::from_raw(offsets, targets))
}

pub fn read_binary(bytes: &[u8]) -> Result<DirectedGraph> {
    let mut cur = Cursor { bytes, pos: 0 };
    if cur.take(4)? != BINARY_MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let header = cur.take(2)?;
    if header[0] != BINARY_VERSION {
        return Err(Error::Format(format!("unsupported version {}", header[0])));
    }
    let width = header[1];
    if width != 4 && width != 8 {
        return Err(Error::Format(format!("unsupported id width {width}")));
    }
    let n = usize::try_from(cur.u64()?).map_err(|_| Error::Format("n too large".into()))?;
    let m = usize::try_from(cur.u64()?).map_err(|_| Error::Format("m too large".into()))?;
    if n > NodeId::MAX as usize {
        return Err(Error::TooLarge(format!("{n} nodes exceed the 32-bit dense id space")));
    }
    let out = read_csr(&mut cur, n, m, width)?;
    let inc = read_csr(&mut cur, n, m, width)?;
    let id_map = (0..n).map(|_| cur.u64()).collect::<Result<Vec<_>>>()?;
    if cur.pos != bytes.len() {
        return Err(Error::Format("trailing bytes".into()));
    }
    if inc != out.transposed() {
        return Err(Error::Format("in-adjacency does not mirror out-adjacency".into()));
    }
    Ok(DirectedGraph::from_parts(out, Some(inc), id_map))
}

/// Detects the binary cache by its magic bytes, otherwise parses text.
pub fn read_edge_list_or_binary(bytes: &[u8], options: LoadOptions) -> Result<DirectedGraph> {
    if bytes.starts_with(BINARY_MAGIC) {
        read_binary(bytes)
    } else {
        load_edge_list(bytes, options)
    }
}

pub fn load_path(path: impl AsRef<Path>, options: LoadOptions) -> Result<DirectedGraph> {
    let bytes = std::fs::read(path)?;
    read_edge_list_or_binary(&bytes, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_k22_text() {
        let g = load_edge_list("0 2\n0 3\n1 2\n1 3\n".as_bytes(), LoadOptions::default()).unwrap();
        assert_eq!((g.node_count(), g.arc_count()), (4, 4));
    }

    #[test]
    fn self_loop_and_duplicate_dropped() {
        let g = load_edge_list("5 5\n5 6\n5 6\n".as_bytes(), LoadOptions::default()).unwrap();
        assert_eq!((g.node_count(), g.arc_count()), (2, 1));
        assert_eq!(g.external_id(0), 5);
        assert_eq!(g.dense_id(6), Some(1));
    }

    #[test]
    fn flags_off_keep_everything() {
        let opts = LoadOptions {
            drop_self_loops: false,
            dedup: false,
            single_direction: false,
        };
        let g = load_edge_list("5 5\n5 6\n5 6\n".as_bytes(), opts).unwrap();
        assert_eq!(g.arc_count(), 3);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match load_edge_list("a b".as_bytes(), LoadOptions::default()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        match load_edge_list("# c\n1 2\n3\n".as_bytes(), LoadOptions::default()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            load_edge_list("# only a comment\n\n".as_bytes(), LoadOptions::default()),
            Err(Error::NoArcs)
        ));
    }

    #[test]
    fn comments_and_crlf() {
        let g = load_edge_list(
            "# header\r\n10 20\r\n20 30\r\n".as_bytes(),
            LoadOptions::default(),
        )
        .unwrap();
        assert_eq!(g.arc_count(), 2);
        assert_eq!(g.id_map(), &[10, 20, 30]);
    }

    #[test]
    fn line_order_is_irrelevant() {
        let a = load_edge_list("7 3\n3 9\n9 7\n".as_bytes(), LoadOptions::default()).unwrap();
        let b = load_edge_list("9 7\n7 3\n3 9\n".as_bytes(), LoadOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn binary_header_is_bit_exact() {
        let g = DirectedGraph::from_arc_list(&[(0, 1)]);
        let mut buf = Vec::new();
        write_binary(&g, &mut buf).unwrap();
        let mut expected = b"K22G".to_vec();
        expected.extend([1u8, 4]);
        expected.extend(2u64.to_le_bytes());
        expected.extend(1u64.to_le_bytes());
        for o in [0u64, 1, 1] {
            expected.extend(o.to_le_bytes());
        }
        expected.extend(1u32.to_le_bytes());
        for o in [0u64, 0, 1] {
            expected.extend(o.to_le_bytes());
        }
        expected.extend(0u32.to_le_bytes());
        expected.extend(0u64.to_le_bytes());
        expected.extend(1u64.to_le_bytes());
        assert_eq!(buf, expected);
        assert_eq!(read_binary(&buf).unwrap(), g);
    }

    #[test]
    fn corrupt_cache_rejected() {
        let g = DirectedGraph::from_arc_list(&[(0, 1), (1, 2)]);
        let mut buf = Vec::new();
        write_binary(&g, &mut buf).unwrap();
        assert!(read_binary(&buf[..buf.len() - 1]).is_err());
        let mut bad = buf.clone();
        bad[4] = 9;
        assert!(read_binary(&bad).is_err());
    }
}
