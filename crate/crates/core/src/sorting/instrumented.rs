//! Sorting algorithms with exact operation counters.
//!
//! Counting convention, applied identically to every algorithm:
//!
//! * `comparisons`: each comparison of an element value against another
//!   element, a key or a pivot.
//! * `moves`: each assignment of an element value into an array slot or a
//!   temporary (a swap through a temporary is three moves).
//! * `index_ops`: each index or counter arithmetic step inside a loop body
//!   (advancing a loop index, computing `j - 1` or a midpoint, bumping a
//!   bucket count).
//! * `reads` / `writes`: each access to the data array or an auxiliary array.
//!
//! Instructions are `comparisons + moves + index_ops`; memory accesses are
//! `reads + writes`. Loop-bound tests on indices are control flow and are not
//! counted.

use super::SortInstance;
use crate::archipelago::AlgorithmId;
use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InstrumentCounters {
    pub comparisons: u64,
    pub moves: u64,
    pub index_ops: u64,
    pub reads: u64,
    pub writes: u64,
}

impl InstrumentCounters {
    /// Instructions executed.
    pub fn instructions(&self) -> u64 {
        self.comparisons + self.moves + self.index_ops
    }

    pub fn memory_accesses(&self) -> u64 {
        self.reads + self.writes
    }
}

/// `1 / (instructions + memory accesses + 1)`, unrounded.
pub fn raw_credit(counters: &InstrumentCounters) -> f64 {
    1.0 / (counters.instructions() + counters.memory_accesses() + 1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SortAlgorithm {
    Quick,
    Insertion,
    Counting,
}

impl SortAlgorithm {
    pub const ALL: [SortAlgorithm; 3] = [SortAlgorithm::Quick, SortAlgorithm::Insertion, SortAlgorithm::Counting];

    pub fn id(self) -> AlgorithmId {
        AlgorithmId::new(match self {
            SortAlgorithm::Quick => "sorting/quick",
            SortAlgorithm::Insertion => "sorting/insertion",
            SortAlgorithm::Counting => "sorting/counting",
        })
    }

    pub fn from_id(id: &AlgorithmId) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| &a.id() == id)
            .ok_or_else(|| CoreError::UnknownAlgorithm(id.to_string()))
    }
}

pub fn insertion_sort(data: &mut [u32]) -> InstrumentCounters {
    let mut c = InstrumentCounters::default();
    for i in 1..data.len() {
        c.index_ops += 1;
        let key = data[i];
        c.reads += 1;
        c.moves += 1;
        let mut j = i;
        while j > 0 {
            c.index_ops += 1;
            let prev = data[j - 1];
            c.reads += 1;
            c.comparisons += 1;
            if prev <= key {
                break;
            }
            data[j] = prev;
            c.writes += 1;
            c.moves += 1;
            j -= 1;
            c.index_ops += 1;
        }
        data[j] = key;
        c.writes += 1;
        c.moves += 1;
    }
    c
}

/// Hoare-partition quicksort with a middle-element pivot.
pub fn quick_sort(data: &mut [u32]) -> InstrumentCounters {
    let mut c = InstrumentCounters::default();
    if data.len() > 1 {
        quick_range(data, 0, data.len() - 1, &mut c);
    }
    c
}

fn quick_range(data: &mut [u32], lo: usize, hi: usize, c: &mut InstrumentCounters) {
    if lo >= hi {
        return;
    }
    c.index_ops += 1;
    let pivot = data[lo + (hi - lo) / 2];
    c.reads += 1;
    c.moves += 1;
    let (mut i, mut j) = (lo, hi);
    loop {
        loop {
            c.reads += 1;
            c.comparisons += 1;
            if data[i] >= pivot {
                break;
            }
            i += 1;
            c.index_ops += 1;
        }
        loop {
            c.reads += 1;
            c.comparisons += 1;
            if data[j] <= pivot {
                break;
            }
            j -= 1;
            c.index_ops += 1;
        }
        if i >= j {
            break;
        }
        data.swap(i, j);
        c.reads += 2;
        c.writes += 2;
        c.moves += 3;
        i += 1;
        j -= 1;
        c.index_ops += 2;
    }
    quick_range(data, lo, j, c);
    quick_range(data, j + 1, hi, c);
}

/// Counting sort over `[0, max_value]`. The count array spans the whole
/// range, so its initialization and scan cost grow with `max_value`.
pub fn counting_sort(data: &mut [u32], max_value: u32) -> InstrumentCounters {
    let mut c = InstrumentCounters::default();
    let buckets = max_value as usize + 1;
    // Counts never exceed the instance length, so a byte per bucket suffices
    // for the instances the crate generates; wider inputs fall back to u32.
    if data.len() <= u8::MAX as usize {
        counting_pass::<u8>(data, buckets, &mut c);
    } else {
        counting_pass::<u32>(data, buckets, &mut c);
    }
    c
}

trait Bucket: Copy + Default + Into<u64> {
    fn bump(self) -> Self;
}

impl Bucket for u8 {
    fn bump(self) -> Self {
        self + 1
    }
}

impl Bucket for u32 {
    fn bump(self) -> Self {
        self + 1
    }
}

fn counting_pass<B: Bucket>(data: &mut [u32], buckets: usize, c: &mut InstrumentCounters) {
    let mut count = vec![B::default(); buckets];
    c.writes += buckets as u64;
    c.index_ops += buckets as u64;

    for &v in data.iter() {
        c.index_ops += 1;
        c.reads += 1;
        let slot = &mut count[v as usize];
        c.reads += 1;
        *slot = slot.bump();
        c.writes += 1;
        c.index_ops += 1;
    }

    let mut k = 0usize;
    for (v, &n) in count.iter().enumerate() {
        c.index_ops += 1;
        c.reads += 1;
        for _ in 0..n.into() {
            data[k] = v as u32;
            c.writes += 1;
            c.moves += 1;
            k += 1;
            c.index_ops += 1;
        }
    }
}

/// Sorts a copy of the instance with the named algorithm.
pub fn run_sort(algo: &AlgorithmId, instance: &SortInstance) -> Result<(Vec<u32>, InstrumentCounters)> {
    let mut data = instance.values.clone();
    let counters = match SortAlgorithm::from_id(algo)? {
        SortAlgorithm::Quick => quick_sort(&mut data),
        SortAlgorithm::Insertion => insertion_sort(&mut data),
        SortAlgorithm::Counting => counting_sort(&mut data, instance.kind.max_value()),
    };
    Ok((data, counters))
}
