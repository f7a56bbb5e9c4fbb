//! Two-color Life (the Immigration Game) on a finite toroid.
//!
//! Both colors follow B3/S23 as if they were one live state. A newborn cell
//! takes the color held by the majority of its three live neighbors, and a
//! surviving cell keeps its color.
//!
//! The arena is stored as two packed bit planes (red and blue), one row of
//! `u64` words per grid row. Bit `x % 64` of word `x / 64` is column `x`.
//! Stepping is bit-sliced: the eight neighbor planes are summed with
//! carry-save adders, 64 cells at a time.

use std::fmt;

use crate::error::LifeError;
use crate::genome::SeedGenome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum CellState {
    Dead = 0,
    Red = 1,
    Blue = 2,
}

impl CellState {
    pub fn is_live(self) -> bool {
        self != CellState::Dead
    }

    fn digit(self) -> char {
        match self {
            CellState::Dead => '0',
            CellState::Red => '1',
            CellState::Blue => '2',
        }
    }
}

/// A toroidal grid of [`CellState`]s.
#[derive(Clone, PartialEq, Eq)]
pub struct Arena {
    width: usize,
    height: usize,
    words: usize,
    red: Vec<u64>,
    blue: Vec<u64>,
}

impl fmt::Debug for Arena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Arena {}x{}", self.width, self.height)?;
        for y in 0..self.height {
            let row: String = (0..self.width).map(|x| self.get(x, y).digit()).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl Arena {
    /// An all-dead arena. Panics if either dimension is zero.
    pub fn new(width: usize, height: usize) -> Self {
        assert!(width >= 1 && height >= 1, "arena dimensions must be positive");
        let words = width.div_ceil(64);
        Arena {
            width,
            height,
            words,
            red: vec![0; words * height],
            blue: vec![0; words * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    fn index(&self, x: usize, y: usize) -> (usize, u64) {
        debug_assert!(x < self.width && y < self.height);
        (y * self.words + x / 64, 1u64 << (x % 64))
    }

    pub fn get(&self, x: usize, y: usize) -> CellState {
        let (i, bit) = self.index(x, y);
        if self.red[i] & bit != 0 {
            CellState::Red
        } else if self.blue[i] & bit != 0 {
            CellState::Blue
        } else {
            CellState::Dead
        }
    }

    pub fn set(&mut self, x: usize, y: usize, state: CellState) {
        let (i, bit) = self.index(x, y);
        self.red[i] &= !bit;
        self.blue[i] &= !bit;
        match state {
            CellState::Dead => {}
            CellState::Red => self.red[i] |= bit,
            CellState::Blue => self.blue[i] |= bit,
        }
    }

    pub fn count(&self, state: CellState) -> usize {
        let ones = |plane: &[u64]| plane.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        match state {
            CellState::Red => ones(&self.red),
            CellState::Blue => ones(&self.blue),
            CellState::Dead => self.width * self.height - ones(&self.red) - ones(&self.blue),
        }
    }

    pub fn live_count(&self) -> usize {
        self.count(CellState::Red) + self.count(CellState::Blue)
    }

    /// Contents shifted by `(dx, dy)` with wrap-around.
    pub fn translated(&self, dx: isize, dy: isize) -> Arena {
        let mut out = Arena::new(self.width, self.height);
        let (w, h) = (self.width as isize, self.height as isize);
        for y in 0..self.height {
            for x in 0..self.width {
                let state = self.get(x, y);
                if state.is_live() {
                    let nx = (x as isize + dx).rem_euclid(w) as usize;
                    let ny = (y as isize + dy).rem_euclid(h) as usize;
                    out.set(nx, ny, state);
                }
            }
        }
        out
    }

    /// Successor arena under the Immigration Game rules.
    pub fn step(&self) -> Arena {
        let mut next = Arena::new(self.width, self.height);
        Stepper::new(self.width, self.height).step_into(self, &mut next);
        next
    }

    /// Text form: `height width` on the first line, then one line per row
    /// of digits `0` (dead), `1` (red), `2` (blue).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.height, self.width);
        for y in 0..self.height {
            out.extend((0..self.width).map(|x| self.get(x, y).digit()));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Arena, LifeError> {
        let grid = crate::genome::parse_digit_grid(text, b"012")
            .map_err(|reason| LifeError::MalformedArena(reason.to_string()))?;
        if grid.rows == 0 || grid.cols == 0 {
            return Err(LifeError::MalformedArena("arena dimensions must be positive".into()));
        }
        let mut arena = Arena::new(grid.cols, grid.rows);
        for (i, &d) in grid.digits.iter().enumerate() {
            let state = match d {
                1 => CellState::Red,
                2 => CellState::Blue,
                _ => CellState::Dead,
            };
            arena.set(i % grid.cols, i / grid.cols, state);
        }
        Ok(arena)
    }
}

/// Reusable scratch space for stepping arenas of one fixed size.
pub struct Stepper {
    width: usize,
    height: usize,
    words: usize,
    last_mask: u64,
    live: Vec<u64>,
    live_west: Vec<u64>,
    live_east: Vec<u64>,
    red_west: Vec<u64>,
    red_east: Vec<u64>,
}

#[inline(always)]
fn full_add(a: u64, b: u64, c: u64) -> (u64, u64) {
    let t = a ^ b;
    (t ^ c, (a & b) | (c & t))
}

impl Stepper {
    pub fn new(width: usize, height: usize) -> Self {
        let words = width.div_ceil(64);
        let rem = width % 64;
        let n = words * height;
        Stepper {
            width,
            height,
            words,
            last_mask: if rem == 0 { u64::MAX } else { (1u64 << rem) - 1 },
            live: vec![0; n],
            live_west: vec![0; n],
            live_east: vec![0; n],
            red_west: vec![0; n],
            red_east: vec![0; n],
        }
    }

    /// `west[x] = row[x - 1]` and `east[x] = row[x + 1]`, both wrapping.
    #[inline]
    fn shift_row(&self, row: &[u64], west: &mut [u64], east: &mut [u64]) {
        let n = self.words;
        let top = (self.width - 1) % 64;
        let top_bit = (row[n - 1] >> top) & 1;
        let low_bit = row[0] & 1;
        for k in 0..n {
            let carry_in = if k == 0 { top_bit } else { row[k - 1] >> 63 };
            west[k] = (row[k] << 1) | carry_in;
            let carry_hi = if k + 1 < n { row[k + 1] << 63 } else { low_bit << top };
            east[k] = (row[k] >> 1) | carry_hi;
        }
        west[n - 1] &= self.last_mask;
        east[n - 1] &= self.last_mask;
    }

    pub fn step_into(&mut self, cur: &Arena, next: &mut Arena) {
        assert_eq!((cur.width, cur.height), (self.width, self.height));
        assert_eq!((next.width, next.height), (self.width, self.height));
        if self.words == 1 {
            self.step_narrow(cur, next);
        } else {
            self.step_wide(cur, next);
        }
    }

    /// Rows of at most 64 cells: rotations stay in registers and each row's
    /// shifted copies are computed once.
    fn step_narrow(&self, cur: &Arena, next: &mut Arena) {
        let (w, h, mask) = (self.width, self.height, self.last_mask);
        let west = |r: u64| ((r << 1) | (r >> (w - 1))) & mask;
        let east = |r: u64| ((r >> 1) | (r << (w - 1))) & mask;
        let row = |y: usize| {
            let red = cur.red[y];
            let live = red | cur.blue[y];
            RowWords {
                live,
                live_west: west(live),
                live_east: east(live),
                red,
                red_west: west(red),
                red_east: east(red),
            }
        };
        let first = row(0);
        let mut up = row(h - 1);
        let mut mid = first;
        for y in 0..h {
            let dn = if y + 1 < h { row(y + 1) } else { first };
            let (r, b) = next_word(&up, &mid, &dn, cur.blue[y]);
            next.red[y] = r;
            next.blue[y] = b;
            up = mid;
            mid = dn;
        }
    }

    fn step_wide(&mut self, cur: &Arena, next: &mut Arena) {
        let n = self.words;
        let mut live_west = std::mem::take(&mut self.live_west);
        let mut live_east = std::mem::take(&mut self.live_east);
        let mut red_west = std::mem::take(&mut self.red_west);
        let mut red_east = std::mem::take(&mut self.red_east);
        for (l, (r, b)) in self.live.iter_mut().zip(cur.red.iter().zip(&cur.blue)) {
            *l = r | b;
        }
        for y in 0..self.height {
            let s = y * n..(y + 1) * n;
            self.shift_row(&self.live[s.clone()], &mut live_west[s.clone()], &mut live_east[s.clone()]);
            self.shift_row(&cur.red[s.clone()], &mut red_west[s.clone()], &mut red_east[s]);
        }

        let h = self.height;
        let words = |i: usize| RowWords {
            live: self.live[i],
            live_west: live_west[i],
            live_east: live_east[i],
            red: cur.red[i],
            red_west: red_west[i],
            red_east: red_east[i],
        };
        for y in 0..h {
            let up = (y + h - 1) % h * n;
            let mid = y * n;
            let dn = (y + 1) % h * n;
            for k in 0..n {
                let (r, b) = next_word(&words(up + k), &words(mid + k), &words(dn + k), cur.blue[mid + k]);
                next.red[mid + k] = r;
                next.blue[mid + k] = b;
            }
        }
        self.live_west = live_west;
        self.live_east = live_east;
        self.red_west = red_west;
        self.red_east = red_east;
    }
}

/// One word of a row with its wrapped neighbours to the west and east.
#[derive(Clone, Copy)]
struct RowWords {
    live: u64,
    live_west: u64,
    live_east: u64,
    red: u64,
    red_west: u64,
    red_east: u64,
}

/// Next red and blue words for the middle row.
#[inline(always)]
fn next_word(up: &RowWords, mid: &RowWords, dn: &RowWords, mid_blue: u64) -> (u64, u64) {
    // Live neighbor count, bit-sliced.
    let (s1, c1) = full_add(up.live_west, up.live, up.live_east);
    let (s2, c2) = full_add(dn.live_west, dn.live, dn.live_east);
    let (g, hh) = (mid.live_west, mid.live_east);
    let (s3, c3) = (g ^ hh, g & hh);
    let (ones, c4) = full_add(s1, s2, s3);
    let (twos_parity, twos_many) = full_add(c1, c2, c3);
    // exactly one "two" among c1..c4 => count is 2 or 3
    let two_or_three = !twos_many & (twos_parity ^ c4);
    let alive = mid.live;
    let next_live = two_or_three & (ones | alive);
    let births = next_live & !alive;
    let survivors = next_live & alive;

    // Red neighbor count >= 2 iff any carry is produced.
    let (rs1, rc1) = full_add(up.red_west, up.red, up.red_east);
    let (rs2, rc2) = full_add(dn.red_west, dn.red, dn.red_east);
    let (rg, rh) = (mid.red_west, mid.red_east);
    let (rs3, rc3) = (rg ^ rh, rg & rh);
    let rc4 = (rs1 & rs2) | (rs3 & (rs1 ^ rs2));
    let red_majority = rc1 | rc2 | rc3 | rc4;

    (
        (survivors & mid.red) | (births & red_majority),
        (survivors & mid_blue) | (births & !red_majority),
    )
}

/// Single-state Life grid, the projection of an [`Arena`] that forgets color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LifeGrid {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<bool>,
}

impl LifeGrid {
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.cells[y * self.width + x]
    }

    pub fn live_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }
}

pub fn project_to_life(arena: &Arena) -> LifeGrid {
    let mut cells = Vec::with_capacity(arena.width * arena.height);
    for y in 0..arena.height {
        for x in 0..arena.width {
            cells.push(arena.get(x, y).is_live());
        }
    }
    LifeGrid {
        width: arena.width,
        height: arena.height,
        cells,
    }
}

/// Multipliers that turn the larger seed dimension into arena size and
/// step budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GameFactors {
    pub width: f64,
    pub height: f64,
    pub time: f64,
}

impl Default for GameFactors {
    fn default() -> Self {
        GameFactors {
            width: 6.0,
            height: 3.0,
            time: 6.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub width: usize,
    pub height: usize,
    pub max_steps: usize,
}

fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor().max(1.0) as usize
}

pub fn size_game(a: &SeedGenome, b: &SeedGenome, factors: GameFactors) -> GameSpec {
    let max_size = a.rows().max(a.cols()).max(b.rows()).max(b.cols());
    let width = round_half_up(max_size as f64 * factors.width);
    let height = round_half_up(max_size as f64 * factors.height);
    let max_steps = round_half_up((width + height) as f64 * factors.time);
    GameSpec {
        width,
        height,
        max_steps,
    }
}

/// Puts the red seed centered in the left half and the blue seed centered
/// in the right half. Odd trials swap the halves.
pub fn place_seeds(
    spec: GameSpec,
    seed_red: &SeedGenome,
    seed_blue: &SeedGenome,
    trial_index: usize,
) -> Result<Arena, LifeError> {
    let left_width = spec.width / 2;
    let right_width = spec.width - left_width;
    let (red_half, blue_half) = if trial_index % 2 == 0 {
        ((0, left_width), (left_width, right_width))
    } else {
        ((left_width, right_width), (0, left_width))
    };
    let mut arena = Arena::new(spec.width, spec.height);
    for (seed, (x_start, half_width), color) in [
        (seed_red, red_half, CellState::Red),
        (seed_blue, blue_half, CellState::Blue),
    ] {
        if seed.cols() > half_width || seed.rows() > spec.height {
            return Err(LifeError::SeedTooLarge {
                rows: seed.rows(),
                cols: seed.cols(),
                half_width,
                height: spec.height,
            });
        }
        let x0 = x_start + (half_width - seed.cols()) / 2;
        let y0 = (spec.height - seed.rows()) / 2;
        for r in 0..seed.rows() {
            for c in 0..seed.cols() {
                if seed.get(r, c) {
                    arena.set(x0 + c, y0 + r, color);
                }
            }
        }
    }
    Ok(arena)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameResult {
    RedWins,
    BlueWins,
    Tie,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameOutcome {
    pub red_initial: usize,
    pub red_final: usize,
    pub blue_initial: usize,
    pub blue_final: usize,
    pub red_score: usize,
    pub blue_score: usize,
    pub result: GameResult,
}

impl GameOutcome {
    pub fn from_counts(red_initial: usize, red_final: usize, blue_initial: usize, blue_final: usize) -> Self {
        let red_score = red_final.saturating_sub(red_initial);
        let blue_score = blue_final.saturating_sub(blue_initial);
        let result = match red_score.cmp(&blue_score) {
            std::cmp::Ordering::Greater => GameResult::RedWins,
            std::cmp::Ordering::Less => GameResult::BlueWins,
            std::cmp::Ordering::Equal => GameResult::Tie,
        };
        GameOutcome {
            red_initial,
            red_final,
            blue_initial,
            blue_final,
            red_score,
            blue_score,
            result,
        }
    }

    /// The result seen from the red player's side.
    pub fn verdict(&self) -> Verdict {
        match self.result {
            GameResult::RedWins => Verdict::WinA,
            GameResult::BlueWins => Verdict::WinB,
            GameResult::Tie => Verdict::Tie,
        }
    }
}

/// Result of one game between an ordered pair `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    WinA,
    WinB,
    Tie,
}

impl Verdict {
    /// Credit to `a`, in half points (win 2, tie 1, loss 0).
    pub fn half_points_a(self) -> u32 {
        match self {
            Verdict::WinA => 2,
            Verdict::Tie => 1,
            Verdict::WinB => 0,
        }
    }

    pub fn flipped(self) -> Verdict {
        match self {
            Verdict::WinA => Verdict::WinB,
            Verdict::WinB => Verdict::WinA,
            Verdict::Tie => Verdict::Tie,
        }
    }
}

/// Plays an already-placed arena for `steps` steps and returns the final arena.
///
/// Stops early, with the exact result, once the arena repeats with period
/// one or two.
pub fn evolve(arena: Arena, steps: usize) -> Arena {
    let (w, h) = (arena.width, arena.height);
    let mut stepper = Stepper::new(w, h);
    let mut older = Arena::new(w, h);
    let mut cur = arena;
    let mut next = Arena::new(w, h);
    for t in 0..steps {
        stepper.step_into(&cur, &mut next);
        // next is step t + 1, older is step t - 1
        if t >= 1 && next == older {
            return if (steps - t - 1) % 2 == 0 { next } else { cur };
        }
        std::mem::swap(&mut older, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// One Immigration Game with `a` as red and `b` as blue.
pub fn run_game(
    a: &SeedGenome,
    b: &SeedGenome,
    factors: GameFactors,
    trial_index: usize,
) -> Result<GameOutcome, LifeError> {
    let spec = size_game(a, b, factors);
    let start = place_seeds(spec, a, b, trial_index)?;
    let red_initial = start.count(CellState::Red);
    let blue_initial = start.count(CellState::Blue);
    let end = evolve(start, spec.max_steps);
    Ok(GameOutcome::from_counts(
        red_initial,
        end.count(CellState::Red),
        blue_initial,
        end.count(CellState::Blue),
    ))
}

/// Verdicts for trials `0..num_trials` of `a` against `b`.
///
/// Only trial parity changes the game. On an even-width toroid the two
/// parities are translations of each other, so one game covers both.
pub fn run_trials(
    a: &SeedGenome,
    b: &SeedGenome,
    factors: GameFactors,
    num_trials: usize,
) -> Result<Vec<Verdict>, LifeError> {
    if num_trials == 0 {
        return Ok(Vec::new());
    }
    let even = run_game(a, b, factors, 0)?.verdict();
    let odd = if num_trials == 1 {
        even
    } else if size_game(a, b, factors).width % 2 == 0 {
        // still validates placement for the odd trial
        place_seeds(size_game(a, b, factors), a, b, 1)?;
        even
    } else {
        run_game(a, b, factors, 1)?.verdict()
    };
    Ok((0..num_trials).map(|t| if t % 2 == 0 { even } else { odd }).collect())
}
