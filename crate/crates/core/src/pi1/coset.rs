//! Coset enumeration, relator-scanning strategy with gap filling.
//!
//! Cosets are numbered in definition order, so runs are reproducible.
//! `Index(n)` is returned only when the table closes; the final table is
//! re-verified against every relator and subgroup generator before the
//! index is reported, so a completed outcome is a certificate, not a hope.

use crate::pi1::{GroupPresentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetOutcome {
    /// Exact index of the subgroup.
    Index(usize),
    /// The table cap was hit; no conclusion.
    Exceeded,
}

struct Table {
    ncols: usize,
    rows: Vec<Vec<Option<u32>>>,
    rep: Vec<u32>,
    alive: usize,
    max_rows: usize,
}

struct Cap;

impl Table {
    fn new(ncols: usize, max_rows: usize) -> Option<Self> {
        if max_rows == 0 {
            return None;
        }
        Some(Self {
            ncols,
            rows: vec![vec![None; ncols]],
            rep: vec![0],
            alive: 1,
            max_rows,
        })
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.rep[x as usize] != x {
            let up = self.rep[self.rep[x as usize] as usize];
            self.rep[x as usize] = up;
            x = up;
        }
        x
    }

    fn entry(&mut self, coset: u32, col: usize) -> Option<u32> {
        let c = self.find(coset) as usize;
        self.rows[c][col].map(|n| self.find(n))
    }

    fn define(&mut self, coset: u32, col: usize) -> Result<u32, Cap> {
        if self.rows.len() >= self.max_rows {
            return Err(Cap);
        }
        let new = self.rows.len() as u32;
        self.rows.push(vec![None; self.ncols]);
        self.rep.push(new);
        self.alive += 1;
        let c = self.find(coset) as usize;
        self.rows[c][col] = Some(new);
        self.rows[new as usize][inverse_col(col)] = Some(c as u32);
        Ok(new)
    }

    /// Records coset * col = image, queueing coincidences on conflict.
    fn set(&mut self, coset: u32, col: usize, image: u32, queue: &mut Vec<(u32, u32)>) {
        let a = self.find(coset);
        let b = self.find(image);
        match self.rows[a as usize][col] {
            Some(old) => {
                let old = self.find(old);
                if old != b {
                    queue.push((old, b));
                }
            }
            None => self.rows[a as usize][col] = Some(b),
        }
        match self.rows[b as usize][inverse_col(col)] {
            Some(old) => {
                let old = self.find(old);
                if old != a {
                    queue.push((old, a));
                }
            }
            None => self.rows[b as usize][inverse_col(col)] = Some(a),
        }
    }

    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            let (keep, dead) = (x.min(y), x.max(y));
            self.rep[dead as usize] = keep;
            self.alive -= 1;
            let dead_row = std::mem::take(&mut self.rows[dead as usize]);
            for (col, slot) in dead_row.into_iter().enumerate() {
                if let Some(n) = slot {
                    let n = self.find(n);
                    self.set(keep, col, n, &mut queue);
                }
            }
        }
    }

    /// Scans `word` at `coset`, filling gaps with new cosets.
    fn scan_and_fill(&mut self, coset: u32, word: &Word) -> Result<(), Cap> {
        if word.is_empty() {
            return Ok(());
        }
        loop {
            let mut f = self.find(coset);
            let mut i = 0usize;
            let mut b = self.find(coset);
            let mut j = word.len();
            while i < j {
                match self.entry(f, col(word[i])) {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            while j > i {
                match self.entry(b, inverse_col(col(word[j - 1]))) {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            if i + 1 == j {
                let mut queue = Vec::new();
                self.set(f, col(word[i]), b, &mut queue);
                for (a, c) in queue {
                    self.coincide(a, c);
                }
                return Ok(());
            }
            // Gap of length two or more: define one coset and rescan.
            self.define(f, col(word[i]))?;
        }
    }

    fn live_cosets(&self) -> Vec<u32> {
        (0..self.rows.len() as u32)
            .filter(|&c| self.rep[c as usize] == c)
            .collect()
    }
}

fn col(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    2 * g + usize::from(letter < 0)
}

fn inverse_col(c: usize) -> usize {
    c ^ 1
}

/// Enumerates cosets of the subgroup generated by `subgroup` inside the
/// presented group, capping the table at `max_cosets` rows (dead rows
/// count; the cap bounds memory, not the index).
pub fn todd_coxeter(
    p: &GroupPresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> CosetOutcome {
    let Some(mut table) = Table::new(2 * p.generator_count, max_cosets) else {
        return CosetOutcome::Exceeded;
    };
    for w in subgroup {
        if table.scan_and_fill(0, w).is_err() {
            return CosetOutcome::Exceeded;
        }
    }
    let mut current: u32 = 0;
    while (current as usize) < table.rows.len() {
        if table.rep[current as usize] != current {
            current += 1;
            continue;
        }
        for r in &p.relators {
            if table.scan_and_fill(current, r).is_err() {
                return CosetOutcome::Exceeded;
            }
            if table.rep[current as usize] != current {
                break;
            }
        }
        if table.rep[current as usize] == current {
            for c in 0..table.ncols {
                if table.entry(current, c).is_none() && table.define(current, c).is_err() {
                    return CosetOutcome::Exceeded;
                }
            }
        }
        current += 1;
    }
    let index = table.alive;
    verify_closed_table(&mut table, p, subgroup);
    CosetOutcome::Index(index)
}

/// A closed table is a permutation action; every relator must stabilize
/// every live coset and every subgroup word must stabilize coset 0.
fn verify_closed_table(table: &mut Table, p: &GroupPresentation, subgroup: &[Word]) {
    let live = table.live_cosets();
    let trace = |table: &mut Table, start: u32, w: &Word| -> u32 {
        let mut c = start;
        for &l in w {
            c = table.entry(c, col(l)).expect("closed table");
        }
        c
    };
    for &c in &live {
        for r in &p.relators {
            assert_eq!(trace(table, c, r), c, "relator fails to close");
        }
    }
    let zero = table.find(0);
    for w in subgroup {
        assert_eq!(trace(table, zero, w), zero, "subgroup word leaves coset 0");
    }
}
