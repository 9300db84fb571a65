//! Binary field snapshots.
//!
//! Layout (all multi-byte values little-endian):
//!
//! | offset | size | content                                   |
//! |--------|------|-------------------------------------------|
//! | 0      | 4    | magic `b"BOF1"`                           |
//! | 4      | 4    | `u32` number of grid points `n`           |
//! | 8      | 8    | `f64` box length `L`                      |
//! | 16     | 8    | `f64` time `t`                            |
//! | 24     | 1    | `u8` kind: 0 real, 1 complex, 2 spectral  |
//! | 25     | 8·n or 16·n | `f64` payload; complex values as (re, im) pairs |

use std::io::{Read, Write};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::field::{ComplexField, RealField, SpectralField};
use crate::grid::Grid;

/// Magic bytes opening every snapshot.
pub const MAGIC: &[u8; 4] = b"BOF1";

/// Size of the fixed header in bytes.
pub const HEADER_LEN: usize = 25;

/// The payload of a snapshot.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    /// Real samples (kind 0).
    Real(Vec<f64>),
    /// Complex samples (kind 1).
    Complex(Vec<Complex64>),
    /// Fourier coefficients in FFT order (kind 2).
    Spectral(Vec<Complex64>),
}

impl Payload {
    fn kind(&self) -> u8 {
        match self {
            Payload::Real(_) => 0,
            Payload::Complex(_) => 1,
            Payload::Spectral(_) => 2,
        }
    }

    fn len(&self) -> usize {
        match self {
            Payload::Real(v) => v.len(),
            Payload::Complex(v) | Payload::Spectral(v) => v.len(),
        }
    }
}

/// A time-stamped field in the binary format.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    /// Number of grid points.
    pub n: u32,
    /// Box length.
    pub length: f64,
    /// Time stamp.
    pub time: f64,
    /// Field data.
    pub payload: Payload,
}

impl Snapshot {
    /// Snapshot of a real field.
    pub fn from_real(f: &RealField, time: f64) -> Self {
        Snapshot {
            n: f.grid().n() as u32,
            length: f.grid().length(),
            time,
            payload: Payload::Real(f.samples().to_vec()),
        }
    }

    /// Snapshot of a complex field.
    pub fn from_complex(f: &ComplexField, time: f64) -> Self {
        Snapshot {
            n: f.grid().n() as u32,
            length: f.grid().length(),
            time,
            payload: Payload::Complex(f.samples().to_vec()),
        }
    }

    /// Snapshot of a spectrum.
    pub fn from_spectral(f: &SpectralField, time: f64) -> Self {
        Snapshot {
            n: f.grid().n() as u32,
            length: f.grid().length(),
            time,
            payload: Payload::Spectral(f.coeffs().to_vec()),
        }
    }

    /// Rebuilds a real field on a grid with matching size and length.
    pub fn to_real(&self, grid: &Arc<Grid>) -> Result<RealField> {
        self.check_grid(grid)?;
        match &self.payload {
            Payload::Real(v) => RealField::new(grid, v.clone()),
            Payload::Complex(v) => RealField::new(grid, v.iter().map(|c| c.re).collect()),
            Payload::Spectral(v) => SpectralField::new(grid, v.clone(), true)?.to_real(),
        }
    }

    fn check_grid(&self, grid: &Grid) -> Result<()> {
        if grid.n() != self.n as usize || grid.length() != self.length {
            return Err(SpectralError::BadSnapshot(format!(
                "snapshot grid (n = {}, L = {}) does not match target grid (n = {}, L = {})",
                self.n,
                self.length,
                grid.n(),
                grid.length()
            )));
        }
        Ok(())
    }

    /// Serializes into a writer.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        if self.payload.len() != self.n as usize {
            return Err(SpectralError::BadSnapshot(format!(
                "payload has {} values for n = {}",
                self.payload.len(),
                self.n
            )));
        }
        w.write_all(MAGIC)?;
        w.write_all(&self.n.to_le_bytes())?;
        w.write_all(&self.length.to_le_bytes())?;
        w.write_all(&self.time.to_le_bytes())?;
        w.write_all(&[self.payload.kind()])?;
        match &self.payload {
            Payload::Real(v) => {
                for x in v {
                    w.write_all(&x.to_le_bytes())?;
                }
            }
            Payload::Complex(v) | Payload::Spectral(v) => {
                for c in v {
                    w.write_all(&c.re.to_le_bytes())?;
                    w.write_all(&c.im.to_le_bytes())?;
                }
            }
        }
        Ok(())
    }

    /// Serializes into a byte vector.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        self.write_to(&mut out)?;
        Ok(out)
    }

    /// Parses from a reader.
    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; HEADER_LEN];
        r.read_exact(&mut header)?;
        if &header[0..4] != MAGIC {
            return Err(SpectralError::BadSnapshot("bad magic".into()));
        }
        let n = u32::from_le_bytes(header[4..8].try_into().expect("4 bytes"));
        let length = f64::from_le_bytes(header[8..16].try_into().expect("8 bytes"));
        let time = f64::from_le_bytes(header[16..24].try_into().expect("8 bytes"));
        let kind = header[24];
        let count = n as usize;
        let read_f64 = |r: &mut R| -> Result<f64> {
            let mut b = [0u8; 8];
            r.read_exact(&mut b)?;
            Ok(f64::from_le_bytes(b))
        };
        let payload = match kind {
            0 => Payload::Real((0..count).map(|_| read_f64(&mut r)).collect::<Result<_>>()?),
            1 | 2 => {
                let mut v = Vec::with_capacity(count);
                for _ in 0..count {
                    let re = read_f64(&mut r)?;
                    let im = read_f64(&mut r)?;
                    v.push(Complex64::new(re, im));
                }
                if kind == 1 {
                    Payload::Complex(v)
                } else {
                    Payload::Spectral(v)
                }
            }
            other => return Err(SpectralError::BadSnapshot(format!("unknown kind {other}"))),
        };
        Ok(Snapshot {
            n,
            length,
            time,
            payload,
        })
    }
}
