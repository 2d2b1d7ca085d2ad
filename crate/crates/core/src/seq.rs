//! Dense channel-major sequence matrix used throughout the crate.

use crate::error::{Error, Result};

/// Real-valued `[channels x len]` matrix, row-major by channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Seq {
    pub channels: usize,
    pub len: usize,
    pub data: Vec<f64>,
}

impl Seq {
    pub fn zeros(channels: usize, len: usize) -> Self {
        Seq {
            channels,
            len,
            data: vec![0.0; channels * len],
        }
    }

    pub fn from_fn(channels: usize, len: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut s = Seq::zeros(channels, len);
        for h in 0..channels {
            for t in 0..len {
                s.data[h * len + t] = f(h, t);
            }
        }
        s
    }

    /// Builds from nested rows; all rows must share one length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let channels = rows.len();
        let len = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != len) {
            return Err(Error::Shape("ragged rows in Seq::from_rows".into()));
        }
        Ok(Seq {
            channels,
            len,
            data: rows.concat(),
        })
    }

    #[inline]
    pub fn row(&self, h: usize) -> &[f64] {
        &self.data[h * self.len..(h + 1) * self.len]
    }

    #[inline]
    pub fn row_mut(&mut self, h: usize) -> &mut [f64] {
        &mut self.data[h * self.len..(h + 1) * self.len]
    }

    #[inline]
    pub fn get(&self, h: usize, t: usize) -> f64 {
        self.data[h * self.len + t]
    }

    #[inline]
    pub fn set(&mut self, h: usize, t: usize, v: f64) {
        self.data[h * self.len + t] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest elementwise |self - other|; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Seq) -> f64 {
        assert_eq!(self.channels, other.channels);
        assert_eq!(self.len, other.len);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}
