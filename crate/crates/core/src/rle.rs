//! Run-length encoded Life patterns.
//!
//! Only the two-state B3/S23 subset is accepted: `b` dead, `o` live, `$` end
//! of row, `!` end of pattern, each optionally preceded by a repeat count.

use std::fmt::Write as _;

use crate::error::RleError;
use crate::genome::SeedGenome;

/// Patterns larger than this many cells are refused before allocating.
pub const MAX_CELLS: usize = 1 << 24;

const LINE_WIDTH: usize = 70;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RlePattern {
    pub name: String,
    pub width: usize,
    pub height: usize,
    /// Row-major, `height` rows of `width` cells.
    pub bits: Vec<bool>,
}

impl RlePattern {
    pub fn area(&self) -> usize {
        self.width * self.height
    }

    pub fn live_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.width + col]
    }

    pub fn to_genome(&self) -> SeedGenome {
        SeedGenome::from_bits(self.height, self.width, self.bits.clone())
    }

    pub fn from_genome(name: impl Into<String>, g: &SeedGenome) -> Self {
        RlePattern {
            name: name.into(),
            width: g.cols(),
            height: g.rows(),
            bits: g.bits().to_vec(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> RleError {
    RleError::Malformed(msg.into())
}

fn is_life_rule(rule: &str) -> bool {
    let r = rule.trim().to_ascii_uppercase();
    r == "B3/S23" || r == "23/3" || r == "S23/B3"
}

fn parse_header(line: &str) -> Result<(usize, usize), RleError> {
    let (mut width, mut height) = (None, None);
    let mut seen: Vec<&str> = Vec::new();
    for field in line.split(',') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| malformed(format!("header field `{}` has no `=`", field.trim())))?;
        let (key, value) = (key.trim(), value.trim());
        if seen.contains(&key) {
            return Err(malformed(format!("header key `{key}` repeated")));
        }
        seen.push(key);
        match key {
            "x" => width = Some(parse_dim(value)?),
            "y" => height = Some(parse_dim(value)?),
            "rule" => {
                if !is_life_rule(value) {
                    return Err(RleError::UnsupportedRule(value.to_string()));
                }
            }
            other => return Err(malformed(format!("unknown header key `{other}`"))),
        }
    }
    match (width, height) {
        (Some(w), Some(h)) => Ok((w, h)),
        _ => Err(malformed("header needs both x and y")),
    }
}

fn parse_dim(value: &str) -> Result<usize, RleError> {
    if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed(format!("bad dimension `{value}`")));
    }
    value
        .parse::<usize>()
        .map_err(|_| malformed(format!("dimension `{value}` out of range")))
}

/// Parses RLE text. The pattern name comes from a `#N` line if present.
pub fn parse_rle(text: &str) -> Result<RlePattern, RleError> {
    let mut name = String::new();
    let mut lines = text.lines();
    let header = loop {
        let line = lines.next().ok_or_else(|| malformed("missing header"))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = comment.strip_prefix('N') {
                name = n.trim().to_string();
            }
            continue;
        }
        break trimmed;
    };
    let (width, height) = parse_header(header)?;
    if width == 0 || height == 0 {
        return Err(malformed("pattern must be at least 1x1"));
    }
    if width.checked_mul(height).map_or(true, |a| a > MAX_CELLS) {
        return Err(malformed(format!("{width}x{height} exceeds {MAX_CELLS} cells")));
    }

    let mut bits = vec![false; width * height];
    let (mut row, mut col) = (0usize, 0usize);
    let mut count: Option<usize> = None;
    let mut done = false;
    'body: for line in lines {
        for ch in line.chars() {
            match ch {
                '0'..='9' => {
                    let d = ch as usize - '0' as usize;
                    let next = count
                        .unwrap_or(0)
                        .checked_mul(10)
                        .and_then(|c| c.checked_add(d))
                        .filter(|&c| c <= MAX_CELLS)
                        .ok_or_else(|| malformed("run count too large"))?;
                    if next == 0 && count.is_none() {
                        return Err(malformed("run count starts with 0"));
                    }
                    count = Some(next);
                }
                'b' | 'o' => {
                    let n = count.take().unwrap_or(1);
                    if row >= height || col + n > width {
                        return Err(malformed(format!("run overflows the {width}x{height} box")));
                    }
                    if ch == 'o' {
                        bits[row * width + col..row * width + col + n].fill(true);
                    }
                    col += n;
                }
                '$' => {
                    let n = count.take().unwrap_or(1);
                    row += n;
                    col = 0;
                    // a trailing `$` may land exactly on `height`
                    if row > height {
                        return Err(malformed(format!("more than {height} rows")));
                    }
                }
                '!' => {
                    if count.is_some() {
                        return Err(malformed("count before `!`"));
                    }
                    done = true;
                    break 'body;
                }
                c if c.is_whitespace() => {
                    if count.is_some() {
                        return Err(malformed("whitespace inside a run"));
                    }
                }
                c => return Err(malformed(format!("unexpected `{c}` in body"))),
            }
        }
    }
    if !done {
        return Err(malformed("missing `!` terminator"));
    }
    Ok(RlePattern {
        name,
        width,
        height,
        bits,
    })
}

/// Canonical RLE: trailing dead cells dropped, blank rows merged into the
/// row-end count, lines wrapped at 70 characters.
pub fn emit_rle(p: &RlePattern) -> String {
    let mut tokens: Vec<String> = Vec::new();
    let mut cursor_row = 0usize;
    let push_run = |tokens: &mut Vec<String>, n: usize, c: char| {
        tokens.push(if n == 1 { c.to_string() } else { format!("{n}{c}") });
    };
    for r in 0..p.height {
        let row = &p.bits[r * p.width..(r + 1) * p.width];
        let Some(last) = row.iter().rposition(|&b| b) else {
            continue;
        };
        if r > cursor_row {
            push_run(&mut tokens, r - cursor_row, '$');
            cursor_row = r;
        }
        let mut c = 0;
        while c <= last {
            let v = row[c];
            let run = row[c..=last].iter().take_while(|&&b| b == v).count();
            push_run(&mut tokens, run, if v { 'o' } else { 'b' });
            c += run;
        }
    }
    tokens.push("!".to_string());

    let mut out = String::new();
    if !p.name.is_empty() {
        let _ = writeln!(out, "#N {}", p.name);
    }
    let _ = writeln!(out, "x = {}, y = {}, rule = B3/S23", p.width, p.height);
    let mut line_len = 0;
    for t in tokens {
        if line_len + t.len() > LINE_WIDTH {
            out.push('\n');
            line_len = 0;
        }
        line_len += t.len();
        out.push_str(&t);
    }
    out.push('\n');
    out
}

macro_rules! bundled {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../patterns/", $file)))),*]
    };
}

const BUNDLED: &[(&str, &str)] = bundled!(
    "acorn.rle",
    "blinker.rle",
    "block.rle",
    "diehard.rle",
    "glider.rle",
    "lwss.rle",
    "r-pentomino.rle",
    "rabbits.rle",
);

/// The small pattern corpus shipped with the crate, keyed by file name.
pub fn bundled_patterns() -> Vec<(&'static str, RlePattern)> {
    BUNDLED
        .iter()
        .map(|(file, text)| (*file, parse_rle(text).expect("bundled patterns are valid")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block() {
        let p = parse_rle("x = 2, y = 2\n2o$2o!").unwrap();
        assert_eq!((p.width, p.height), (2, 2));
        assert!(p.bits.iter().all(|&b| b));
    }

    #[test]
    fn single_row() {
        let p = parse_rle("x = 3, y = 1\nobo!").unwrap();
        assert_eq!(p.bits, vec![true, false, true]);
    }

    #[test]
    fn missing_terminator() {
        assert!(matches!(parse_rle("x = 3, y = 3\n3o$3o"), Err(RleError::Malformed(_))));
    }

    #[test]
    fn other_rules_are_refused() {
        assert!(matches!(
            parse_rle("x = 1, y = 1, rule = B36/S23\no!"),
            Err(RleError::UnsupportedRule(_))
        ));
        assert!(parse_rle("x = 1, y = 1, rule = b3/s23\no!").is_ok());
    }

    #[test]
    fn short_rows_are_padded() {
        let p = parse_rle("#C comment\n#N thing\nx = 4, y = 3\no$$2bo!").unwrap();
        assert_eq!(p.name, "thing");
        let expect = [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0];
        assert_eq!(p.bits, expect.iter().map(|&v| v == 1).collect::<Vec<_>>());
    }

    #[test]
    fn body_may_span_lines() {
        let p = parse_rle("x = 3, y = 3\nbo$2b\no$3o!\n").unwrap();
        assert_eq!(p.live_count(), 5);
    }

    #[test]
    fn overflow_is_malformed() {
        for bad in [
            "x = 2, y = 1\n3o!",
            "x = 2, y = 1\no$o!",
            "x = 0, y = 1\n!",
            "x = 2\n2o!",
            "x = 99999999, y = 99999999\n!",
            "x = 2, y = 2\n2x!",
            "x = 2, y = 2\n99999999999999999999o!",
            "x = 2, y = 1, x = 3\no!",
            "",
        ] {
            assert!(matches!(parse_rle(bad), Err(RleError::Malformed(_))), "{bad:?}");
        }
    }

    #[test]
    fn emit_is_canonical() {
        let p = parse_rle("x = 5, y = 4\nbo2bo$o4b$o3bo$4o!").unwrap();
        assert_eq!(emit_rle(&p), "x = 5, y = 4, rule = B3/S23\nbo2bo$o$o3bo$4o!\n");
        let blank = parse_rle("x = 3, y = 4\n$$$!").unwrap();
        assert_eq!(emit_rle(&blank), "x = 3, y = 4, rule = B3/S23\n!\n");
        let gap = parse_rle("x = 1, y = 4\no3$o!").unwrap();
        assert_eq!(emit_rle(&gap), "x = 1, y = 4, rule = B3/S23\no3$o!\n");
        let late = parse_rle("x = 2, y = 3\n2$bo!").unwrap();
        assert_eq!(emit_rle(&late), "x = 2, y = 3, rule = B3/S23\n2$bo!\n");
    }

    #[test]
    fn bundled_round_trip() {
        let all = bundled_patterns();
        assert_eq!(all.len(), 8);
        for (file, p) in all {
            let again = parse_rle(&emit_rle(&p)).unwrap();
            assert_eq!(again, p, "{file}");
        }
    }
}
