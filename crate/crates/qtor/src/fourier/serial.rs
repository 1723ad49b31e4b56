//! JSON file format for coefficient tables.
//!
//! Entries are sorted lexicographically by (k, j); the decimal encoding used
//! by serde_json is shortest-round-trip, so binary64 values survive a
//! write/read cycle bit-exactly.

use super::{MultiIndex, Parity, TorusMap};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    k: Vec<i64>,
    j: i64,
    re: Vec<f64>,
    im: Vec<f64>,
}

/// On-disk representation of a [`TorusMap`].
#[derive(Debug, Serialize, Deserialize)]
pub struct TorusMapFile {
    pub l: usize,
    pub d: usize,
    pub k_theta_max: i64,
    pub k_x_max: i64,
    pub parity: Vec<String>,
    entries: Vec<Entry>,
}

fn parity_str(p: Parity) -> &'static str {
    match p {
        Parity::EvenEven => "even-even",
        Parity::OddEven => "odd-even",
        Parity::EvenOdd => "even-odd",
        Parity::OddOdd => "odd-odd",
        Parity::None => "none",
    }
}

fn parity_from(s: &str) -> Result<Parity> {
    Ok(match s {
        "even-even" => Parity::EvenEven,
        "odd-even" => Parity::OddEven,
        "even-odd" => Parity::EvenOdd,
        "odd-odd" => Parity::OddOdd,
        "none" => Parity::None,
        other => return Err(Error::Io(format!("unknown parity flag {other:?}"))),
    })
}

impl From<&TorusMap> for TorusMapFile {
    fn from(map: &TorusMap) -> Self {
        // BTreeMap iteration is already lexicographic in (k, j)
        let entries = map
            .coeffs
            .iter()
            .map(|(idx, v)| Entry {
                k: idx.k.clone(),
                j: idx.j,
                re: v.iter().map(|z| z.re).collect(),
                im: v.iter().map(|z| z.im).collect(),
            })
            .collect();
        TorusMapFile {
            l: map.l,
            d: map.d,
            k_theta_max: map.k_theta_max,
            k_x_max: map.k_x_max,
            parity: map.parity.iter().map(|&p| parity_str(p).into()).collect(),
            entries,
        }
    }
}

impl TorusMapFile {
    pub fn into_map(self) -> Result<TorusMap> {
        let mut map = TorusMap::zero(self.l, self.d, self.k_theta_max, self.k_x_max);
        map.parity = self
            .parity
            .iter()
            .map(|s| parity_from(s))
            .collect::<Result<Vec<_>>>()?;
        for e in self.entries {
            if e.k.len() != self.l || e.re.len() != self.d || e.im.len() != self.d {
                return Err(Error::Io("entry shape mismatch".into()));
            }
            let v: Vec<Complex64> = e
                .re
                .iter()
                .zip(&e.im)
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect();
            map.coeffs.insert(MultiIndex::new(e.k, e.j), v);
        }
        Ok(map)
    }
}

impl TorusMap {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TorusMapFile::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<TorusMap> {
        let file: TorusMapFile =
            serde_json::from_str(text).map_err(|e| Error::Io(e.to_string()))?;
        file.into_map()
    }
}
