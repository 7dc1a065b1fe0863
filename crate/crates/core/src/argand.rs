//! Step streams n^{-s} and their compensated partial sums.

use crate::error::{Error, Result};
use crate::precision::{reduce_angle, reduce_product, DoubleWord, LogStream, ReducedAngle};
use crate::SParam;
use num_complex::Complex64;
use rayon::prelude::*;

pub const BLOCK: u64 = 4096;

/// Neumaier-compensated accumulator for complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn starting_at(z: Complex64) -> Self {
        CompensatedSum {
            re: z.re,
            im: z.im,
            ..Self::default()
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

/// One term n^{-s} with its running sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub n: u64,
    pub length: f64,
    pub theta: ReducedAngle,
    pub step: Complex64,
    pub cumulative: Complex64,
}

#[derive(Debug, Clone)]
pub struct ArgandStream {
    pub s: SParam,
    pub range: (u64, u64),
    pub stride: u64,
    pub records: Vec<StepRecord>,
}

#[inline]
fn step_from_log(s: SParam, ln: DoubleWord) -> Result<(f64, ReducedAngle, Complex64)> {
    let length = (-s.sigma * ln.hi).exp() * (1.0 - s.sigma * ln.lo);
    let theta = reduce_product(s.t, ln)?;
    let (sin, cos) = theta.theta.sin_cos();
    Ok((length, theta, Complex64::new(length * cos, length * sin)))
}

/// n^{-s} = n^{-σ}·e^{iθₙ} with θₙ = −t·ln n reduced.
pub fn step(s: SParam, n: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain("step index must be ≥ 1".into()));
    }
    if n == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let theta = reduce_angle(s.t, n)?;
    let length = (n as f64).powf(-s.sigma);
    let (sin, cos) = theta.theta.sin_cos();
    Ok(Complex64::new(length * cos, length * sin))
}

/// Compensated Σ_{n=lo}^{hi} n^{-s}.
fn range_sum(s: SParam, lo: u64, hi: u64) -> Result<Complex64> {
    let mut acc = CompensatedSum::new();
    if lo > hi {
        return Ok(acc.value());
    }
    let mut logs = LogStream::starting_at(lo)?;
    loop {
        let (n, ln) = logs.current();
        let (_, _, z) = step_from_log(s, ln)?;
        acc.add(z);
        if n == hi {
            break;
        }
        logs.advance();
    }
    Ok(acc.value())
}

fn pairwise(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        len => {
            let (a, b) = values.split_at(len / 2);
            pairwise(a) + pairwise(b)
        }
    }
}

fn block_sums(s: SParam, blocks: u64, last: u64) -> Result<Vec<Complex64>> {
    (0..blocks)
        .into_par_iter()
        .map(|j| range_sum(s, j * BLOCK + 1, ((j + 1) * BLOCK).min(last)))
        .collect()
}

/// Σ_{n=1}^{N} n^{-s}: compensated 4096-term blocks combined pairwise.
pub fn partial_sum(s: SParam, n: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain("partial sum needs N ≥ 1".into()));
    }
    let blocks = n.div_ceil(BLOCK);
    Ok(pairwise(&block_sums(s, blocks, n)?))
}

/// Single-threaded compensated sum over 1..=N with no blocking.
pub fn partial_sum_sequential(s: SParam, n: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain("partial sum needs N ≥ 1".into()));
    }
    range_sum(s, 1, n)
}

/// Partial sums at several cut-offs from one pass over the blocks.
pub fn partial_sums_at(s: SParam, cutoffs: &[u64]) -> Result<Vec<Complex64>> {
    if cutoffs.contains(&0) {
        return Err(Error::Domain("partial sum needs N ≥ 1".into()));
    }
    let max = cutoffs.iter().copied().max().unwrap_or(0);
    let full_blocks = max / BLOCK;
    let sums = block_sums(s, full_blocks, max)?;
    let mut prefix = Vec::with_capacity(sums.len() + 1);
    let mut acc = CompensatedSum::new();
    prefix.push(acc.value());
    for z in &sums {
        acc.add(*z);
        prefix.push(acc.value());
    }
    cutoffs
        .par_iter()
        .map(|&n| {
            let whole = n / BLOCK;
            let tail = range_sum(s, whole * BLOCK + 1, n)?;
            Ok(prefix[whole as usize] + tail)
        })
        .collect()
}

/// Lazy stream of step records from `lo` to `hi`, emitting every `stride`-th step
/// and always the last one.
pub struct StepIter {
    s: SParam,
    logs: LogStream,
    acc: CompensatedSum,
    next_emit: u64,
    hi: u64,
    stride: u64,
    done: bool,
}

impl StepIter {
    pub fn new(s: SParam, lo: u64, hi: u64, stride: u64) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::Domain(format!(
                "empty or invalid step range [{lo}, {hi}]"
            )));
        }
        if stride == 0 {
            return Err(Error::Domain("stride must be ≥ 1".into()));
        }
        let start = if lo > 1 {
            partial_sum(s, lo - 1)?
        } else {
            Complex64::new(0.0, 0.0)
        };
        Ok(StepIter {
            s,
            logs: LogStream::starting_at(lo)?,
            acc: CompensatedSum::starting_at(start),
            next_emit: lo,
            hi,
            stride,
            done: false,
        })
    }

    fn advance_to(&mut self, target: u64) -> Result<StepRecord> {
        loop {
            let (n, ln) = self.logs.current();
            let (length, theta, z) = step_from_log(self.s, ln)?;
            let z = if n == 1 { Complex64::new(1.0, 0.0) } else { z };
            self.acc.add(z);
            if n == target {
                if n < self.hi {
                    self.logs.advance();
                }
                return Ok(StepRecord {
                    n,
                    length,
                    theta,
                    step: z,
                    cumulative: self.acc.value(),
                });
            }
            self.logs.advance();
        }
    }
}

impl Iterator for StepIter {
    type Item = Result<StepRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let target = self.next_emit;
        let rec = self.advance_to(target);
        if target >= self.hi {
            self.done = true;
        } else {
            self.next_emit = (target + self.stride).min(self.hi);
        }
        if rec.is_err() {
            self.done = true;
        }
        Some(rec)
    }
}

/// Materialised stream: (hi−lo)/stride + 1 records plus the endpoint when it is off-stride.
pub fn dump_steps(s: SParam, lo: u64, hi: u64, stride: u64) -> Result<ArgandStream> {
    let records = StepIter::new(s, lo, hi, stride)?.collect::<Result<Vec<_>>>()?;
    Ok(ArgandStream {
        s,
        range: (lo, hi),
        stride,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_is_one() {
        let s = SParam::new(0.5, 1e9).unwrap();
        assert_eq!(step(s, 1).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn real_axis_step() {
        let s = SParam::new(2.0, 0.0).unwrap();
        let z = step(s, 3).unwrap();
        assert!((z.re - 1.0 / 9.0).abs() < 1e-16 && z.im == 0.0);
    }

    #[test]
    fn record_counts() {
        let s = SParam::new(0.5, 100.586).unwrap();
        assert_eq!(dump_steps(s, 1, 64, 1).unwrap().records.len(), 64);
        assert_eq!(dump_steps(s, 1, 10_000, 100).unwrap().records.len(), 101);
        assert!(dump_steps(s, 5, 4, 1).is_err());
    }

    #[test]
    fn cutoffs_agree_with_partial_sum() {
        let s = SParam::new(0.5, 1234.5).unwrap();
        let cuts = [1, 4095, 4096, 4097, 9000];
        let many = partial_sums_at(s, &cuts).unwrap();
        for (n, z) in cuts.iter().zip(many) {
            let direct = partial_sum(s, *n).unwrap();
            assert!((z - direct).norm() < 1e-12 * direct.norm().max(1.0));
        }
    }
}
