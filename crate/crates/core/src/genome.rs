//! Seed genomes and the genetic operators that act on them.
//!
//! A genome is a binary matrix; 1 marks a cell that is live when the game
//! starts. All randomized operators take an explicit RNG.

use std::fmt;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::GenomeError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeedGenome {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl fmt::Debug for SeedGenome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeedGenome({}x{}: {})", self.rows, self.cols, self.body_slashed())
    }
}

impl SeedGenome {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SeedGenome {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    /// Builds a genome from row-major bits. Panics if the length is wrong.
    pub fn from_bits(rows: usize, cols: usize, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), rows * cols, "bit count must equal rows * cols");
        SeedGenome { rows, cols, bits }
    }

    /// Builds a genome from equal-length rows of `0`/`1` characters.
    pub fn from_rows(rows: &[&str]) -> Result<Self, GenomeError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut bits = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(GenomeError::MalformedSeed("ragged rows".into()));
            }
            for ch in row.bytes() {
                match ch {
                    b'0' => bits.push(false),
                    b'1' => bits.push(true),
                    _ => return Err(GenomeError::MalformedSeed(format!("unexpected byte {ch:#04x}"))),
                }
            }
        }
        Ok(SeedGenome {
            rows: rows.len(),
            cols,
            bits,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.bits[row * self.cols + col] = value;
    }

    pub fn live_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Fraction of live cells; 0 for an empty matrix.
    pub fn density(&self) -> f64 {
        if self.bits.is_empty() {
            0.0
        } else {
            self.live_count() as f64 / self.area() as f64
        }
    }

    pub fn hamming(&self, other: &SeedGenome) -> Option<usize> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        Some(self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count())
    }

    fn row(&self, r: usize) -> &[bool] {
        &self.bits[r * self.cols..(r + 1) * self.cols]
    }

    /// Sub-matrix of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> SeedGenome {
        let mut bits = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for r in r0..r1 {
            bits.extend_from_slice(&self.row(r)[c0..c1]);
        }
        SeedGenome {
            rows: r1 - r0,
            cols: c1 - c0,
            bits,
        }
    }

    /// Canonical seed text: `rows cols` then one line of `0`/`1` per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            out.extend(self.row(r).iter().map(|&b| if b { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GenomeError> {
        let grid = parse_digit_grid(text, b"01").map_err(|r| GenomeError::MalformedSeed(r.into()))?;
        Ok(SeedGenome {
            rows: grid.rows,
            cols: grid.cols,
            bits: grid.digits.into_iter().map(|d| d == 1).collect(),
        })
    }

    /// Rows joined with `/`, the single-line form used inside CSV fields.
    pub fn body_slashed(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            if r > 0 {
                out.push('/');
            }
            out.extend(self.row(r).iter().map(|&b| if b { '1' } else { '0' }));
        }
        out
    }

    pub fn from_slashed(rows: usize, cols: usize, body: &str) -> Result<Self, GenomeError> {
        let lines: Vec<&str> = if body.is_empty() { Vec::new() } else { body.split('/').collect() };
        if lines.len() != rows {
            return Err(GenomeError::MalformedSeed(format!("expected {rows} rows, found {}", lines.len())));
        }
        let g = SeedGenome::from_rows(&lines)?;
        if rows > 0 && g.cols != cols {
            return Err(GenomeError::MalformedSeed(format!("expected {cols} columns, found {}", g.cols)));
        }
        Ok(SeedGenome { rows, cols, bits: g.bits })
    }
}

pub(crate) struct DigitGrid {
    pub rows: usize,
    pub cols: usize,
    pub digits: Vec<u8>,
}

/// Parses `rows cols\n` followed by `rows` lines of exactly `cols` digits
/// drawn from `alphabet`. The final newline may be omitted.
pub(crate) fn parse_digit_grid(text: &str, alphabet: &[u8]) -> Result<DigitGrid, &'static str> {
    let (header, body) = match text.split_once('\n') {
        Some(parts) => parts,
        None => (text, ""),
    };
    let (r, c) = header.split_once(' ').ok_or("header must be `rows cols`")?;
    let parse_dim = |s: &str| -> Result<usize, &'static str> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
            return Err("dimension must be a canonical decimal integer");
        }
        s.parse().map_err(|_| "dimension out of range")
    };
    let rows = parse_dim(r)?;
    let cols = parse_dim(c)?;
    let line_len = cols.checked_add(1).ok_or("dimension out of range")?;
    let expected = rows.checked_mul(line_len).ok_or("dimension out of range")?;
    // A body without its trailing newline is one byte short.
    if body.len() != expected && body.len() + 1 != expected {
        return Err("body length does not match header");
    }
    if rows > 0 && cols == 0 && body.len() != expected {
        return Err("body length does not match header");
    }
    let mut digits = Vec::with_capacity(rows * cols);
    let bytes = body.as_bytes();
    for r in 0..rows {
        let line = &bytes[r * line_len..(r * line_len + cols).min(bytes.len())];
        if line.len() != cols {
            return Err("short row");
        }
        for &b in line {
            match alphabet.iter().position(|&a| a == b) {
                Some(d) => digits.push(d as u8),
                None => return Err("unexpected character in body"),
            }
        }
        let end = r * line_len + cols;
        if end < bytes.len() && bytes[end] != b'\n' {
            return Err("row longer than header width");
        }
    }
    Ok(DigitGrid { rows, cols, digits })
}

/// Each bit independently live with probability `density`.
pub fn random_seed<R: Rng + ?Sized>(rows: usize, cols: usize, density: f64, rng: &mut R) -> SeedGenome {
    let bits = (0..rows * cols).map(|_| rng.gen_bool(density)).collect();
    SeedGenome { rows, cols, bits }
}

/// Exactly `ones` live cells at uniformly random positions.
pub fn random_seed_exact<R: Rng + ?Sized>(rows: usize, cols: usize, ones: usize, rng: &mut R) -> SeedGenome {
    let area = rows * cols;
    assert!(ones <= area, "more live cells than the matrix holds");
    let mut g = SeedGenome::zeros(rows, cols);
    for i in index::sample(rng, area, ones) {
        g.bits[i] = true;
    }
    g
}

/// Flips each bit with probability `rate`; if none flipped, flips one
/// uniformly chosen bit.
pub fn mutate_flip<R: Rng + ?Sized>(g: &SeedGenome, rate: f64, rng: &mut R) -> SeedGenome {
    let mut out = g.clone();
    if out.bits.is_empty() {
        return out;
    }
    let mut flipped = false;
    for b in out.bits.iter_mut() {
        if rng.gen_bool(rate) {
            *b = !*b;
            flipped = true;
        }
    }
    if !flipped {
        let i = rng.gen_range(0..out.bits.len());
        out.bits[i] = !out.bits[i];
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

pub const SIDES: [Side; 4] = [Side::Top, Side::Bottom, Side::Left, Side::Right];

/// Adds a line of random bits along `side`.
pub fn grow_side<R: Rng + ?Sized>(g: &SeedGenome, side: Side, density: f64, rng: &mut R) -> SeedGenome {
    match side {
        Side::Top | Side::Bottom => {
            let line: Vec<bool> = (0..g.cols).map(|_| rng.gen_bool(density)).collect();
            let mut bits = Vec::with_capacity((g.rows + 1) * g.cols);
            if side == Side::Top {
                bits.extend_from_slice(&line);
                bits.extend_from_slice(&g.bits);
            } else {
                bits.extend_from_slice(&g.bits);
                bits.extend_from_slice(&line);
            }
            SeedGenome {
                rows: g.rows + 1,
                cols: g.cols,
                bits,
            }
        }
        Side::Left | Side::Right => {
            let mut bits = Vec::with_capacity(g.rows * (g.cols + 1));
            for r in 0..g.rows {
                let new_bit = rng.gen_bool(density);
                if side == Side::Left {
                    bits.push(new_bit);
                }
                bits.extend_from_slice(g.row(r));
                if side == Side::Right {
                    bits.push(new_bit);
                }
            }
            SeedGenome {
                rows: g.rows,
                cols: g.cols + 1,
                bits,
            }
        }
    }
}

pub fn grow<R: Rng + ?Sized>(g: &SeedGenome, density: f64, rng: &mut R) -> SeedGenome {
    let side = SIDES[rng.gen_range(0..4)];
    grow_side(g, side, density, rng)
}

pub fn shrink_side(g: &SeedGenome, side: Side) -> SeedGenome {
    match side {
        Side::Top => g.submatrix(1, g.rows, 0, g.cols),
        Side::Bottom => g.submatrix(0, g.rows - 1, 0, g.cols),
        Side::Left => g.submatrix(0, g.rows, 1, g.cols),
        Side::Right => g.submatrix(0, g.rows, 0, g.cols - 1),
    }
}

/// Removes one outer line, choosing uniformly among the sides whose removal
/// keeps the genome at or above the minimum dimensions.
pub fn shrink<R: Rng + ?Sized>(g: &SeedGenome, min_rows: usize, min_cols: usize, rng: &mut R) -> SeedGenome {
    let legal: Vec<Side> = SIDES
        .into_iter()
        .filter(|s| match s {
            Side::Top | Side::Bottom => g.rows > min_rows.max(1),
            Side::Left | Side::Right => g.cols > min_cols.max(1),
        })
        .collect();
    match legal.choose(rng) {
        Some(&side) => shrink_side(g, side),
        None => g.clone(),
    }
}

/// Fraction of matching cells, or 0 when dimensions differ.
pub fn similarity(a: &SeedGenome, b: &SeedGenome) -> f64 {
    match a.hamming(b) {
        Some(_) if a.bits.is_empty() => 1.0,
        Some(d) => (a.area() - d) as f64 / a.area() as f64,
        None => 0.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cut {
    /// First `k` rows from `a`, the rest from `b`.
    Row(usize),
    /// First `k` columns from `a`, the rest from `b`.
    Col(usize),
}

pub fn crossover_at(a: &SeedGenome, b: &SeedGenome, cut: Cut) -> Result<SeedGenome, GenomeError> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(GenomeError::DimensionMismatch {
            a: (a.rows, a.cols),
            b: (b.rows, b.cols),
        });
    }
    let mut child = a.clone();
    match cut {
        Cut::Row(k) => {
            let k = k.min(a.rows);
            child.bits[k * a.cols..].copy_from_slice(&b.bits[k * a.cols..]);
        }
        Cut::Col(k) => {
            for r in 0..a.rows {
                for c in k.min(a.cols)..a.cols {
                    child.bits[r * a.cols + c] = b.bits[r * a.cols + c];
                }
            }
        }
    }
    Ok(child)
}

/// Single-point crossover on rows or columns with equal probability. The
/// cut never falls on the border, so both parents contribute. A dimension of
/// size 1 has no interior cut; the other axis is used instead.
pub fn crossover<R: Rng + ?Sized>(a: &SeedGenome, b: &SeedGenome, rng: &mut R) -> Result<SeedGenome, GenomeError> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return crossover_at(a, b, Cut::Row(0));
    }
    let by_rows = rng.gen_bool(0.5);
    let cut = match (by_rows, a.rows > 1, a.cols > 1) {
        (true, true, _) | (false, true, false) => Cut::Row(rng.gen_range(1..a.rows)),
        (false, _, true) | (true, false, true) => Cut::Col(rng.gen_range(1..a.cols)),
        _ => return Ok(a.clone()),
    };
    crossover_at(a, b, cut)
}

/// Rotates counterclockwise by 90 degrees `quarter_turns` times.
pub fn rotate(g: &SeedGenome, quarter_turns: u8) -> SeedGenome {
    let mut out = g.clone();
    for _ in 0..quarter_turns % 4 {
        let (rows, cols) = (out.cols, out.rows);
        let mut bits = Vec::with_capacity(out.bits.len());
        for r in 0..rows {
            for c in 0..cols {
                // new[r][c] = old[c][old_cols - 1 - r]
                bits.push(out.bits[c * out.cols + (out.cols - 1 - r)]);
            }
        }
        out = SeedGenome { rows, cols, bits };
    }
    out
}

/// Joins `a` (left) and `b` (right) with one dead buffer column between.
/// The shorter block is vertically centered, with the odd padding row on top.
pub fn join_side_by_side(a: &SeedGenome, b: &SeedGenome) -> SeedGenome {
    let rows = a.rows.max(b.rows);
    let cols = a.cols + 1 + b.cols;
    let mut out = SeedGenome::zeros(rows, cols);
    for (part, x0) in [(a, 0), (b, a.cols + 1)] {
        let y0 = (rows - part.rows).div_ceil(2);
        for r in 0..part.rows {
            for c in 0..part.cols {
                out.set(y0 + r, x0 + c, part.get(r, c));
            }
        }
    }
    out
}

/// Fusion: each part rotated by a uniform number of quarter turns, then joined.
pub fn fuse<R: Rng + ?Sized>(a: &SeedGenome, b: &SeedGenome, rng: &mut R) -> SeedGenome {
    let ra = rotate(a, rng.gen_range(0..4));
    let rb = rotate(b, rng.gen_range(0..4));
    join_side_by_side(&ra, &rb)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Col(usize),
}

/// The line with the lowest density. Rows are scanned top to bottom, then
/// columns left to right; the first minimum wins.
pub fn sparsest_line(g: &SeedGenome) -> Option<Line> {
    if g.bits.is_empty() {
        return None;
    }
    // (ones, length, line); compare ones/length by cross-multiplication
    let mut best: Option<(usize, usize, Line)> = None;
    let mut consider = |ones: usize, len: usize, line: Line| match best {
        Some((bo, bl, _)) if ones * bl >= bo * len => {}
        _ => best = Some((ones, len, line)),
    };
    for r in 0..g.rows {
        consider(g.row(r).iter().filter(|&&b| b).count(), g.cols, Line::Row(r));
    }
    for c in 0..g.cols {
        consider((0..g.rows).filter(|&r| g.get(r, c)).count(), g.rows, Line::Col(c));
    }
    best.map(|(_, _, line)| line)
}

/// The two pieces left after removing `line`.
pub fn split_at_line(g: &SeedGenome, line: Line) -> (SeedGenome, SeedGenome) {
    match line {
        Line::Row(r) => (g.submatrix(0, r, 0, g.cols), g.submatrix(r + 1, g.rows, 0, g.cols)),
        Line::Col(c) => (g.submatrix(0, g.rows, 0, c), g.submatrix(0, g.rows, c + 1, g.cols)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FissionSplit {
    pub line: Line,
    pub kept: SeedGenome,
    pub discarded: SeedGenome,
}

/// Splits at the sparsest line and keeps one of the two sides at random.
pub fn fission_split<R: Rng + ?Sized>(g: &SeedGenome, rng: &mut R) -> Option<FissionSplit> {
    let line = sparsest_line(g)?;
    let (first, second) = split_at_line(g, line);
    let (kept, discarded) = if rng.gen_bool(0.5) { (first, second) } else { (second, first) };
    Some(FissionSplit { line, kept, discarded })
}

/// Fission, or `None` (rejected) when the kept part is below the minimum size.
pub fn fission<R: Rng + ?Sized>(g: &SeedGenome, min_rows: usize, min_cols: usize, rng: &mut R) -> Option<SeedGenome> {
    let split = fission_split(g, rng)?;
    let k = split.kept;
    (k.rows >= min_rows.max(1) && k.cols >= min_cols.max(1)).then_some(k)
}

/// Uniform permutation of the cell values; shape and live count unchanged.
pub fn shuffle<R: Rng + ?Sized>(g: &SeedGenome, rng: &mut R) -> SeedGenome {
    let mut out = g.clone();
    out.bits.shuffle(rng);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn random_seed_extremes() {
        let mut rng = rng();
        assert_eq!(random_seed(5, 5, 0.0, &mut rng).live_count(), 0);
        assert_eq!(random_seed(5, 5, 1.0, &mut rng).live_count(), 25);
        assert_eq!(random_seed_exact(5, 7, 13, &mut rng).live_count(), 13);
    }

    #[test]
    fn random_seed_mean_matches_binomial() {
        let mut rng = rng();
        let total: usize = (0..10_000).map(|_| random_seed(5, 5, 0.375, &mut rng).live_count()).sum();
        let mean = total as f64 / 10_000.0;
        assert!((9.0..=9.75).contains(&mean), "mean {mean}");
    }

    #[test]
    fn mutate_flip_extremes() {
        let mut rng = rng();
        let g = random_seed(5, 5, 0.4, &mut rng);
        for _ in 0..100 {
            assert_eq!(mutate_flip(&g, 0.0, &mut rng).hamming(&g), Some(1));
        }
        let all = mutate_flip(&g, 1.0, &mut rng);
        assert_eq!(all.hamming(&g), Some(25));
    }

    #[test]
    fn mutate_flip_mean_distance() {
        // E[d] = 25 * 0.01 + 0.99^25 (the forced flip when nothing flipped)
        let analytic = 25.0 * 0.01 + 0.99f64.powi(25);
        let mut rng = rng();
        let g = SeedGenome::zeros(5, 5);
        let total: usize = (0..10_000).map(|_| mutate_flip(&g, 0.01, &mut rng).hamming(&g).unwrap()).sum();
        let mean = total as f64 / 10_000.0;
        assert!((1.0..=1.35).contains(&mean), "mean {mean}");
        assert!((mean - analytic).abs() < 0.03, "mean {mean} vs {analytic}");
    }

    #[test]
    fn grow_adds_one_line() {
        let mut rng = rng();
        let g = random_seed(5, 5, 0.4, &mut rng);
        for _ in 0..400 {
            let side = SIDES[rng.gen_range(0..4)];
            let out = grow_side(&g, side, 0.0, &mut rng);
            assert_eq!(out.live_count(), g.live_count());
            assert_eq!(shrink_side(&out, side), g);
        }
        let grown = grow(&g, 0.375, &mut rng);
        assert!(matches!((grown.rows(), grown.cols()), (6, 5) | (5, 6)));
    }

    #[test]
    fn grow_side_frequencies_are_uniform() {
        let mut rng = rng();
        let g = SeedGenome::zeros(5, 5);
        let mut rows = 0usize;
        let mut top = 0usize;
        let mut left = 0usize;
        let mut marked = g.clone();
        marked.set(0, 0, true);
        for _ in 0..4000 {
            let out = grow(&marked, 0.0, &mut rng);
            if out.rows() == 6 {
                rows += 1;
                if !out.get(0, 0) {
                    top += 1;
                }
            } else if !out.get(0, 0) {
                left += 1;
            }
        }
        let frac = |n: usize| n as f64 / 4000.0;
        assert!((frac(top) - 0.25).abs() <= 0.02);
        assert!((frac(rows - top) - 0.25).abs() <= 0.02);
        assert!((frac(left) - 0.25).abs() <= 0.02);
        assert!((frac(4000 - rows - left) - 0.25).abs() <= 0.02);
    }

    #[test]
    fn shrink_respects_minimums() {
        let mut rng = rng();
        let g = random_seed(5, 5, 0.5, &mut rng);
        assert_eq!(shrink(&g, 5, 5, &mut rng), g);
        let tall = random_seed(6, 5, 0.5, &mut rng);
        for _ in 0..20 {
            let out = shrink(&tall, 5, 5, &mut rng);
            assert_eq!((out.rows(), out.cols()), (5, 5));
        }
        let big = random_seed(8, 8, 0.5, &mut rng);
        for _ in 0..50 {
            let out = shrink(&big, 5, 5, &mut rng);
            let oracle = [
                big.submatrix(1, 8, 0, 8),
                big.submatrix(0, 7, 0, 8),
                big.submatrix(0, 8, 1, 8),
                big.submatrix(0, 8, 0, 7),
            ];
            assert!(oracle.contains(&out));
        }
    }

    #[test]
    fn similarity_examples() {
        let mut rng = rng();
        let a = random_seed(5, 5, 0.5, &mut rng);
        assert_eq!(similarity(&a, &a), 1.0);
        assert_eq!(similarity(&a, &SeedGenome::zeros(5, 6)), 0.0);
        let mut b = a.clone();
        for c in 0..5 {
            b.set(2, c, !b.get(2, c));
        }
        assert!((similarity(&a, &b) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn crossover_examples() {
        let ones = SeedGenome::from_rows(&["11", "11"]).unwrap();
        let zeros = SeedGenome::zeros(2, 2);
        assert_eq!(
            crossover_at(&ones, &zeros, Cut::Row(1)).unwrap(),
            SeedGenome::from_rows(&["11", "00"]).unwrap()
        );
        assert_eq!(
            crossover_at(&ones, &zeros, Cut::Col(1)).unwrap(),
            SeedGenome::from_rows(&["10", "10"]).unwrap()
        );
        let mut rng = rng();
        assert_eq!(crossover(&ones, &ones, &mut rng).unwrap(), ones);
        assert!(matches!(
            crossover(&ones, &SeedGenome::zeros(2, 3), &mut rng),
            Err(GenomeError::DimensionMismatch { .. })
        ));
        // a 2x2 cross of distinct parents always mixes both
        for _ in 0..50 {
            let child = crossover(&ones, &zeros, &mut rng).unwrap();
            assert_eq!(child.live_count(), 2);
        }
    }

    #[test]
    fn rotation_convention_is_counterclockwise() {
        let g = SeedGenome::from_rows(&["101"]).unwrap();
        assert_eq!(rotate(&g, 0), g);
        assert_eq!(rotate(&g, 1), SeedGenome::from_rows(&["1", "0", "1"]).unwrap());
        let asym = SeedGenome::from_rows(&["110"]).unwrap();
        // right end moves to the top
        assert_eq!(rotate(&asym, 1), SeedGenome::from_rows(&["0", "1", "1"]).unwrap());
        let mut rng = rng();
        let r = random_seed(3, 7, 0.5, &mut rng);
        assert_eq!(rotate(&r, 4), r);
        assert_eq!(rotate(&rotate(&r, 1), 3), r);
    }

    #[test]
    fn join_examples() {
        let mut rng = rng();
        let a = random_seed(5, 5, 0.5, &mut rng);
        let b = random_seed(5, 5, 0.5, &mut rng);
        let j = join_side_by_side(&a, &b);
        assert_eq!((j.rows(), j.cols()), (5, 11));
        assert!((0..5).all(|r| !j.get(r, 5)));
        assert_eq!(j.submatrix(0, 5, 0, 5), a);
        assert_eq!(j.submatrix(0, 5, 6, 11), b);
        let z = fuse(&SeedGenome::zeros(5, 5), &SeedGenome::zeros(6, 5), &mut rng);
        assert_eq!(z.live_count(), 0);

        // shorter block centered, odd padding on top
        let tall = SeedGenome::from_rows(&["1", "1", "1", "1"]).unwrap();
        let short = SeedGenome::from_rows(&["1"]).unwrap();
        let j = join_side_by_side(&tall, &short);
        assert_eq!(j, SeedGenome::from_rows(&["100", "100", "101", "100"]).unwrap());
    }

    #[test]
    fn fission_examples() {
        let mut rng = rng();
        let a = random_seed(5, 5, 1.0, &mut rng);
        let b = random_seed(5, 5, 1.0, &mut rng);
        let fused = join_side_by_side(&a, &b);
        assert_eq!(sparsest_line(&fused), Some(Line::Col(5)));
        for _ in 0..10 {
            let kept = fission(&fused, 5, 5, &mut rng).unwrap();
            assert!(kept == a || kept == b);
        }
        assert_eq!(fission(&a, 5, 5, &mut rng), None);
    }

    #[test]
    fn sparsest_line_tie_break_prefers_rows_then_first() {
        let g = SeedGenome::from_rows(&["111", "101", "111"]).unwrap();
        // row 1 and column 1 both have density 2/3; the row comes first
        assert_eq!(sparsest_line(&g), Some(Line::Row(1)));
        let g = SeedGenome::zeros(3, 4);
        assert_eq!(sparsest_line(&g), Some(Line::Row(0)));
    }

    #[test]
    fn shuffle_is_uniform_per_cell() {
        let mut rng = rng();
        let g = random_seed_exact(10, 10, 30, &mut rng);
        let mut hits = vec![0usize; 100];
        for _ in 0..10_000 {
            let s = shuffle(&g, &mut rng);
            assert_eq!(s.live_count(), 30);
            for (h, &b) in hits.iter_mut().zip(s.bits()) {
                *h += b as usize;
            }
        }
        for h in hits {
            assert!((h as f64 / 10_000.0 - 0.30).abs() <= 0.02);
        }
        let z = SeedGenome::zeros(4, 4);
        assert_eq!(shuffle(&z, &mut rng), z);
    }

    #[test]
    fn seed_text_format() {
        let g = SeedGenome::from_rows(&["0110", "1001"]).unwrap();
        assert_eq!(g.to_text(), "2 4\n0110\n1001\n");
        assert_eq!(SeedGenome::from_text(&g.to_text()).unwrap(), g);
        assert_eq!(SeedGenome::from_text("2 4\n0110\n1001").unwrap(), g);
        for bad in ["2 4\n0110\n100\n", "2  4\n0110\n1001\n", "2 4\n0110\n1021\n", "2 4\n0110\n1001\n\n", "x", "02 4\n0110\n1001\n"] {
            assert!(SeedGenome::from_text(bad).is_err(), "{bad:?}");
        }
        assert_eq!(SeedGenome::from_slashed(2, 4, &g.body_slashed()).unwrap(), g);
    }
}
