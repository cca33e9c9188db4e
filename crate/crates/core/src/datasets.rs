//! Contact-list datasets (SocioPatterns-style `t i j [extra columns]` files) and the
//! reference statistics published for them.

use std::fs::File;
use std::io::{self, BufReader, Read};
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;

use crate::stream::{normalize, ParseError, RawLinks, Time, MAX_TIME};
use crate::LinkStream;

/// Expected statistics after preprocessing with a given delta.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reference {
    pub delta: Time,
    pub m: usize,
    pub max_degree: usize,
    pub alpha: u64,
    pub max_clique_size: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct Dataset {
    pub name: &'static str,
    /// File names looked up in the data directory, plain or gzipped.
    pub file_names: &'static [&'static str],
    pub references: &'static [Reference],
}

const fn r(delta: Time, m: usize, max_degree: usize, alpha: u64, max_clique_size: usize) -> Reference {
    Reference {
        delta,
        m,
        max_degree,
        alpha,
        max_clique_size,
    }
}

pub const DATASETS: &[Dataset] = &[
    Dataset {
        name: "hypertext",
        file_names: &["ht09_contact_list.dat", "hypertext.dat", "hypertext.txt"],
        references: &[
            r(0, 20_818, 9, 19_037, 6),
            r(125, 6_323, 14, 6_859, 7),
            r(3125, 4_082, 48, 6_308, 7),
        ],
    },
    Dataset {
        name: "highschool11",
        file_names: &["thiers_2011.csv", "highschool11.dat", "highschool11.txt"],
        references: &[
            r(0, 28_539, 8, 26_384, 5),
            r(125, 6_472, 19, 7_732, 7),
            r(3125, 3_636, 34, 7_500, 10),
        ],
    },
    Dataset {
        name: "hospital-ward",
        file_names: &["detailed_list_of_contacts_Hospital.dat", "hospital-ward.dat"],
        references: &[
            r(0, 32_424, 7, 27_835, 5),
            r(125, 7_971, 12, 9_731, 6),
            r(3125, 3_033, 25, 9_856, 9),
        ],
    },
    Dataset {
        name: "highschool12",
        file_names: &["thiers_2012.csv", "highschool12.dat"],
        references: &[
            r(0, 45_047, 5, 42_105, 5),
            r(125, 11_329, 10, 12_115, 5),
            r(3125, 5_691, 18, 7_268, 7),
        ],
    },
];

pub fn find(name: &str) -> Option<&'static Dataset> {
    DATASETS.iter().find(|d| d.name == name)
}

impl Dataset {
    /// First existing file for this dataset in `dir`, trying `<name>` then `<name>.gz`.
    pub fn locate(&self, dir: &Path) -> Option<PathBuf> {
        self.file_names
            .iter()
            .flat_map(|f| [dir.join(f), dir.join(format!("{f}.gz"))])
            .find(|p| p.is_file())
    }
}

/// Reads a file, transparently gunzipping names ending in `.gz`.
pub fn read_text(path: &Path) -> io::Result<String> {
    let mut bytes = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut bytes)?;
    decode(&bytes, path.extension().is_some_and(|e| e == "gz"))
}

/// UTF-8 text from raw or gzipped bytes.
pub fn decode(bytes: &[u8], gzipped: bool) -> io::Result<String> {
    if gzipped {
        let mut text = String::new();
        GzDecoder::new(bytes).read_to_string(&mut text)?;
        Ok(text)
    } else {
        String::from_utf8(bytes.to_vec()).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }
}

/// Parses a contact list: whitespace-separated lines whose first three columns are
/// `t i j`; further columns are ignored. Each contact becomes `(t, t + delta, i, j)`,
/// then overlapping links are merged.
pub fn parse_contact_list(text: &str, delta: Time) -> Result<LinkStream, ParseError> {
    let mut raw = RawLinks::new();
    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(t), Some(a), Some(b)) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(ParseError::TokenCount {
                line: line_no,
                expected: 3,
                found: trimmed.split_whitespace().count(),
            });
        };
        let time = t
            .parse::<Time>()
            .ok()
            .filter(|&t| t <= MAX_TIME)
            .ok_or_else(|| ParseError::BadTimestamp {
                line: line_no,
                token: t.to_owned(),
            })?;
        let end = time
            .checked_add(delta)
            .filter(|&e| e <= MAX_TIME)
            .ok_or(ParseError::Overflow {
                line: line_no,
                time,
                delta,
            })?;
        raw.push_labeled(line_no, time, end, a, b)?;
    }
    Ok(normalize(raw))
}
