//! A validated (datum, automorphism) pair with lazily built, optionally
//! disk-cached Bruhat matrix and piece list.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bruhat::BruhatMatrix;
use crate::cartan::{hex_digest, CartanDatum};
use crate::error::{Error, Result};
use crate::coset::{min_coset_reps, CosetKind};
use crate::piece::{enumerate_pieces, sort_pieces, PieceIndex};
use crate::subset::Subset;
use crate::twist::Automorphism;
use crate::weyl::WeylGroup;

/// Datum document: `{"cartan": [[..]]}`, `{"type": "A", "rank": n}`,
/// `{"factors": [..]}`, or a bare list of factors.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DatumDoc {
    Cartan { cartan: Vec<Vec<i32>> },
    Typed {
        #[serde(rename = "type")]
        kind: String,
        rank: usize,
    },
    Factors { factors: Vec<DatumDoc> },
    List(Vec<DatumDoc>),
}

impl DatumDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidCartan(format!("unreadable datum document: {e}")))
    }

    pub fn to_datum(&self) -> Result<CartanDatum> {
        match self {
            DatumDoc::Cartan { cartan } => CartanDatum::new(cartan.clone()),
            DatumDoc::Typed { kind, rank } => {
                let mut chars = kind.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(letter), None) => CartanDatum::of_type(letter, *rank),
                    _ => Err(Error::InvalidCartan(format!("type must be a single letter, got {kind:?}"))),
                }
            }
            DatumDoc::Factors { factors } | DatumDoc::List(factors) => {
                if factors.is_empty() {
                    return Err(Error::InvalidCartan("empty factor list".into()));
                }
                let parts = factors.iter().map(DatumDoc::to_datum).collect::<Result<Vec<_>>>()?;
                CartanDatum::product(&parts)
            }
        }
    }
}

/// Reads a datum document from a file.
pub fn load_datum(path: &Path) -> Result<CartanDatum> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidCartan(format!("cannot read {}: {e}", path.display())))?;
    DatumDoc::from_json(&text)?.to_datum()
}

#[derive(Serialize, Deserialize)]
struct BruhatFile {
    digest: String,
    elements: Vec<Vec<usize>>,
    rows: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PieceEntry {
    #[serde(rename = "J")]
    j: Vec<usize>,
    w: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PiecesFile {
    digest: String,
    pieces: Vec<PieceEntry>,
}

pub struct Session {
    group: WeylGroup,
    delta: Automorphism,
    cache_dir: Option<PathBuf>,
    pieces: OnceLock<Vec<PieceIndex>>,
    bruhat: OnceLock<BruhatMatrix>,
    log: Mutex<Vec<String>>,
}

impl Session {
    pub fn new(datum: CartanDatum, automorphism: &str, cache_dir: Option<PathBuf>) -> Result<Self> {
        let group = WeylGroup::new(datum)?;
        let delta = Automorphism::parse(automorphism, group.system())?;
        Ok(Session {
            group,
            delta,
            cache_dir,
            pieces: OnceLock::new(),
            bruhat: OnceLock::new(),
            log: Mutex::new(Vec::new()),
        })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn delta(&self) -> &Automorphism {
        &self.delta
    }

    pub fn into_parts(self) -> (WeylGroup, Automorphism) {
        (self.group, self.delta)
    }

    /// Digest of the Cartan matrix.
    pub fn datum_digest(&self) -> String {
        self.group.datum().digest()
    }

    /// Digest of the Cartan matrix together with the automorphism.
    pub fn twisted_digest(&self) -> String {
        hex_digest(format!("{}|{}", self.datum_digest(), self.delta.spec_string()).as_bytes())
    }

    /// Cache activity messages, drained.
    pub fn take_log(&self) -> Vec<String> {
        std::mem::take(&mut self.log.lock().unwrap())
    }

    fn note(&self, msg: String) {
        self.log.lock().unwrap().push(msg);
    }

    fn cache_path(&self, kind: &str, digest: &str) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("{kind}-{}.json", &digest[..16])))
    }

    fn write_cache<T: Serialize>(&self, path: &Path, value: &T) {
        let result = (|| -> std::io::Result<()> {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            fs::write(&tmp, serde_json::to_vec(value)?)?;
            fs::rename(&tmp, path)
        })();
        match result {
            Ok(()) => self.note(format!("cache: wrote {}", path.display())),
            Err(e) => self.note(format!("cache: could not write {}: {e}", path.display())),
        }
    }

    fn read_cache<T: for<'de> Deserialize<'de>>(&self, path: &Path) -> Option<T> {
        let text = fs::read_to_string(path).ok()?;
        match serde_json::from_str(&text) {
            Ok(v) => Some(v),
            Err(e) => {
                self.note(format!("cache: ignoring malformed {}: {e}", path.display()));
                None
            }
        }
    }

    /// All pieces in canonical order.
    pub fn pieces(&self) -> &[PieceIndex] {
        self.pieces.get_or_init(|| {
            let digest = self.twisted_digest();
            let path = self.cache_path("pieces", &digest);
            if let Some(path) = &path {
                if let Some(file) = self.read_cache::<PiecesFile>(path) {
                    if let Some(pieces) = self.decode_pieces(&digest, file) {
                        self.note(format!("cache: hit {}", path.display()));
                        return pieces;
                    }
                    self.note(format!("cache: stale {}", path.display()));
                }
            }
            let pieces = enumerate_pieces(&self.group, &self.delta);
            if let Some(path) = &path {
                let file = PiecesFile {
                    digest,
                    pieces: pieces
                        .iter()
                        .map(|p| PieceEntry { j: p.j.labels(), w: self.group.reduced_word(&p.w) })
                        .collect(),
                };
                self.write_cache(path, &file);
            }
            pieces
        })
    }

    fn decode_pieces(&self, digest: &str, file: PiecesFile) -> Option<Vec<PieceIndex>> {
        if file.digest != digest {
            return None;
        }
        let g = &self.group;
        let pieces = file
            .pieces
            .iter()
            .map(|e| {
                let j = Subset::from_labels(&e.j, g.rank())?;
                PieceIndex::new(g, &self.delta, j, g.from_word(&e.w)?)
            })
            .collect::<Result<Vec<_>>>()
            .ok()?;
        // A truncated or reordered list must not be trusted either.
        let mut sorted = pieces.clone();
        sort_pieces(g, &mut sorted);
        sorted.dedup();
        (sorted == pieces && pieces.len() == piece_count(g, &self.delta)).then_some(pieces)
    }

    /// Bruhat order matrix over [`WeylGroup::elements`] (discovery order).
    pub fn bruhat(&self) -> &BruhatMatrix {
        self.bruhat.get_or_init(|| {
            let g = &self.group;
            let digest = self.datum_digest();
            let words: Vec<Vec<usize>> = g.elements().iter().map(|u| g.reduced_word(u)).collect();
            let path = self.cache_path("bruhat", &digest);
            if let Some(path) = &path {
                if let Some(file) = self.read_cache::<BruhatFile>(path) {
                    if file.digest == digest && file.elements == words {
                        if let Some(m) = BruhatMatrix::from_rows(&file.rows) {
                            self.note(format!("cache: hit {}", path.display()));
                            return m;
                        }
                    }
                    self.note(format!("cache: stale {}", path.display()));
                }
            }
            let m = BruhatMatrix::compute(g);
            if let Some(path) = &path {
                let file = BruhatFile { digest, elements: words, rows: m.to_rows() };
                self.write_cache(path, &file);
            }
            m
        })
    }
}

fn piece_count(g: &WeylGroup, d: &Automorphism) -> usize {
    g.full_subset()
        .subsets()
        .map(|j| min_coset_reps(g, Subset::empty(), d.apply_subset(j), CosetKind::Right).len())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datum_documents() {
        let a2 = CartanDatum::parse_type("A2").unwrap();
        let doc = |s: &str| DatumDoc::from_json(s).and_then(|d| d.to_datum());
        assert_eq!(doc(r#"{"type":"A","rank":2}"#).unwrap(), a2);
        assert_eq!(doc(r#"{"cartan":[[2,-1],[-1,2]]}"#).unwrap(), a2);
        let prod = CartanDatum::parse_type("A1xB2").unwrap();
        assert_eq!(doc(r#"[{"type":"A","rank":1},{"type":"B","rank":2}]"#).unwrap(), prod);
        assert_eq!(doc(r#"{"factors":[{"type":"A","rank":1},{"cartan":[[2,-1],[-2,2]]}]}"#).unwrap(), prod);
        for bad in [r#"{"cartan":[[2,0],[-1,2]]}"#, "not json", r#"{"type":"Q","rank":2}"#, "[]"] {
            let err = doc(bad).unwrap_err().to_string();
            assert!(err.contains("invalid Cartan matrix"), "{bad}: {err}");
        }
    }

    #[test]
    fn cache_round_trip_and_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let make = || {
            Session::new(CartanDatum::parse_type("A2").unwrap(), "1:2,2:1", Some(dir.path().into())).unwrap()
        };
        let cold = make();
        let cold_pieces = cold.pieces().to_vec();
        let cold_rows = cold.bruhat().to_rows();
        assert!(cold.take_log().iter().all(|m| m.starts_with("cache: wrote")));

        let warm = make();
        assert_eq!(warm.pieces(), &cold_pieces[..]);
        assert_eq!(warm.bruhat().to_rows(), cold_rows);
        assert!(warm.take_log().iter().all(|m| m.starts_with("cache: hit")));

        // Corrupt both files: the session must regenerate, not trust them.
        for entry in fs::read_dir(dir.path()).unwrap() {
            let path = entry.unwrap().path();
            let text = fs::read_to_string(&path).unwrap();
            let bad = text.replacen("\"digest\":\"", "\"digest\":\"0", 1);
            fs::write(&path, bad).unwrap();
        }
        let again = make();
        assert_eq!(again.pieces(), &cold_pieces[..]);
        assert_eq!(again.bruhat().to_rows(), cold_rows);
        assert!(again.take_log().iter().any(|m| m.starts_with("cache: stale")));
    }
}
