//! ASCII and binary PGM map readers.

use super::{CellState, OccupancyGrid};
use crate::error::{Error, Result};

/// Sidecar metadata for PGM maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgmMeta {
    pub resolution: f64,
    /// Bytes `<= occupied_threshold` are obstacles.
    pub occupied_threshold: u8,
}

impl Default for PgmMeta {
    fn default() -> Self {
        Self {
            resolution: 0.05,
            occupied_threshold: 50,
        }
    }
}

impl PgmMeta {
    /// Parses `key = value` (or `key: value`) lines; unknown keys are an error.
    pub fn parse(text: &str) -> Result<Self> {
        let mut meta = PgmMeta::default();
        let mut seen_resolution = false;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| Error::MalformedMap(format!("bad sidecar line {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "resolution" => {
                    meta.resolution = value
                        .parse()
                        .map_err(|_| Error::MalformedMap(format!("bad resolution {value:?}")))?;
                    seen_resolution = true;
                }
                "occupied_threshold" => {
                    meta.occupied_threshold = value.parse().map_err(|_| {
                        Error::MalformedMap(format!("bad occupied_threshold {value:?}"))
                    })?;
                }
                other => {
                    return Err(Error::MalformedMap(format!(
                        "unknown sidecar key {other:?}"
                    )))
                }
            }
        }
        if !seen_resolution {
            return Err(Error::MalformedMap("sidecar is missing resolution".into()));
        }
        Ok(meta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapFormat {
    Ascii,
    Pgm(PgmMeta),
}

/// Loads a ground-truth map: every cell must be Free or Occupied.
pub fn load_map(source: &[u8], format: MapFormat) -> Result<OccupancyGrid> {
    match format {
        MapFormat::Ascii => {
            let text = std::str::from_utf8(source)
                .map_err(|_| Error::MalformedMap("map is not valid UTF-8".into()))?;
            parse_ascii(text, false)
        }
        MapFormat::Pgm(meta) => parse_pgm(source, meta),
    }
}

pub(crate) fn state_from_char(c: char) -> Option<CellState> {
    match c {
        '.' => Some(CellState::Free),
        '#' => Some(CellState::Occupied),
        '?' => Some(CellState::Unknown),
        _ => None,
    }
}

/// Parses the ASCII format. `?` is accepted only when `allow_unknown` is set
/// (belief snapshots).
pub fn parse_ascii(text: &str, allow_unknown: bool) -> Result<OccupancyGrid> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedMap("empty map".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::MalformedMap(format!("bad header {header:?}")));
    }
    let width: usize = fields[0]
        .parse()
        .map_err(|_| Error::MalformedMap(format!("bad width {:?}", fields[0])))?;
    let height: usize = fields[1]
        .parse()
        .map_err(|_| Error::MalformedMap(format!("bad height {:?}", fields[1])))?;
    let resolution: f64 = fields[2]
        .parse()
        .map_err(|_| Error::MalformedMap(format!("bad resolution {:?}", fields[2])))?;
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::ZeroResolution);
    }
    if width == 0 || height == 0 {
        return Err(Error::MalformedMap("zero dimension".into()));
    }

    let mut states = Vec::with_capacity(width * height);
    let mut rows = 0;
    for (j, line) in lines.enumerate() {
        if j >= height {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::MalformedMap(format!("more than {height} rows")));
        }
        if line.chars().count() != width {
            return Err(Error::MalformedMap(format!(
                "row {j} has {} characters, expected {width}",
                line.chars().count()
            )));
        }
        for c in line.chars() {
            let s = state_from_char(c)
                .filter(|&s| allow_unknown || s != CellState::Unknown)
                .ok_or_else(|| {
                    Error::MalformedMap(format!("illegal character {c:?} in row {j}"))
                })?;
            states.push(s);
        }
        rows += 1;
    }
    if rows != height {
        return Err(Error::MalformedMap(format!(
            "expected {height} rows, got {rows}"
        )));
    }
    OccupancyGrid::from_states(width, height, resolution, states)
}

/// Parses a binary P5 PGM with maxval 255. The first image row is `j = 0`.
pub fn parse_pgm(bytes: &[u8], meta: PgmMeta) -> Result<OccupancyGrid> {
    let mut pos = 0;
    let magic = next_token(bytes, &mut pos)?;
    if magic != b"P5" {
        return Err(Error::MalformedMap("not a binary P5 PGM".into()));
    }
    let width = parse_number(next_token(bytes, &mut pos)?)?;
    let height = parse_number(next_token(bytes, &mut pos)?)?;
    let maxval = parse_number(next_token(bytes, &mut pos)?)?;
    if maxval != 255 {
        return Err(Error::MalformedMap(format!(
            "maxval must be 255, got {maxval}"
        )));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(Error::MalformedMap("truncated PGM header".into()));
    }
    pos += 1;
    let data = &bytes[pos..];
    if width == 0 || height == 0 || data.len() != width * height {
        return Err(Error::MalformedMap(format!(
            "raster has {} bytes, expected {}x{}",
            data.len(),
            width,
            height
        )));
    }
    if !(meta.resolution.is_finite() && meta.resolution > 0.0) {
        return Err(Error::ZeroResolution);
    }
    let states = data
        .iter()
        .map(|&b| {
            if b <= meta.occupied_threshold {
                CellState::Occupied
            } else {
                CellState::Free
            }
        })
        .collect();
    OccupancyGrid::from_states(width, height, meta.resolution, states)
}

fn next_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::MalformedMap("truncated PGM header".into()));
    }
    Ok(&bytes[start..*pos])
}

fn parse_number(tok: &[u8]) -> Result<usize> {
    std::str::from_utf8(tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::MalformedMap("bad number in PGM header".into()))
}
