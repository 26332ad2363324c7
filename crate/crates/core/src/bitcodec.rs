//! Lossless fixed-width storage of decimated Σ∆ samples.
//!
//! Every entry of D_ρS^r q (q on the mid-rise alphabet) is an integer N times
//! δ/(2ρʳ). For r = 1 the integer has the parity of ρ and |N| ≤ (2L−1)ρ, so
//! (N − ρ)/2 + Lρ fits in (2L−1)ρ + 1 slots. For r ≥ 2 the first ρ−1 rows of S_ρ
//! break the parity pattern, so we store N + N_max with
//! N_max = ρ(2L−1)·max(ρ, m−ρ)^{r−1}.
//!
//! Wire format: 34-byte little-endian header
//! `"DCM8" | version u8 | m u32 | ρ u32 | r u32 | η u32 | L u32 | δ f64 | flags u8`
//! (flags bit 0 = complex), then the offsets, real part before imaginary part, as
//! big-endian fixed-width fields packed back to back. The last byte is zero padded.
//! Each field is ⌈r·log₂(2L·base)⌉ bits, base = ρ for r = 1 and m otherwise.

use crate::decimation::DecimationPlan;
use crate::error::{Error, Result};
use crate::numerics::{tol, ComplexVector, C64};
use crate::sigma_delta::Alphabet;

pub const MAGIC: &[u8; 4] = b"DCM8";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 34;

/// ⌈r·log₂(2L·base)⌉ with base = ρ (r = 1) or m (r ≥ 2), computed in integers when possible.
pub fn component_width(m: usize, rho: usize, r: usize, levels: u32) -> u32 {
    let base = if r == 1 { rho } else { m } as u128;
    let x = 2 * levels as u128 * base;
    let mut acc: Option<u128> = Some(1);
    for _ in 0..r {
        acc = acc.and_then(|a| a.checked_mul(x));
    }
    match acc {
        Some(0) | Some(1) => 0,
        Some(v) => 128 - (v - 1).leading_zeros(),
        None => (r as f64 * (x as f64).log2()).ceil() as u32,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Header {
    pub m: u32,
    pub rho: u32,
    pub r: u32,
    pub eta: u32,
    pub levels: u32,
    pub delta: f64,
    pub complex_mode: bool,
}

impl Header {
    pub fn new(plan: &DecimationPlan, a: &Alphabet) -> Result<Self> {
        let narrow = |x: usize, what: &str| u32::try_from(x).map_err(|_| Error::InvalidPlan(format!("{what} = {x} exceeds 32 bits")));
        Ok(Self {
            m: narrow(plan.m, "m")?,
            rho: narrow(plan.rho, "rho")?,
            r: narrow(plan.r, "r")?,
            eta: narrow(plan.eta, "eta")?,
            levels: a.levels,
            delta: a.delta,
            complex_mode: a.complex_mode,
        })
    }

    pub fn width(&self) -> u32 {
        component_width(self.m as usize, self.rho as usize, self.r as usize, self.levels)
    }

    pub fn components(&self) -> usize {
        if self.complex_mode {
            2
        } else {
            1
        }
    }

    pub fn payload_bits(&self) -> u64 {
        self.eta as u64 * self.components() as u64 * self.width() as u64
    }

    pub fn payload_bytes(&self) -> usize {
        self.payload_bits().div_ceil(8) as usize
    }

    fn rho_pow_r(&self) -> Option<i128> {
        (self.rho as i128).checked_pow(self.r)
    }

    /// Largest |N| the r ≥ 2 layout admits.
    fn n_max(&self) -> Option<i128> {
        let (m, rho, l) = (self.m as i128, self.rho as i128, self.levels as i128);
        let big = rho.max(m - rho);
        big.checked_pow(self.r - 1)?.checked_mul(rho * (2 * l - 1))
    }

    fn to_bytes(self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(MAGIC);
        out[4] = VERSION;
        for (i, v) in [self.m, self.rho, self.r, self.eta, self.levels].iter().enumerate() {
            out[5 + 4 * i..9 + 4 * i].copy_from_slice(&v.to_le_bytes());
        }
        out[25..33].copy_from_slice(&self.delta.to_le_bytes());
        out[33] = self.complex_mode as u8;
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let bad = |msg: &str| Error::MalformedHeader(msg.to_string());
        if bytes.len() < HEADER_LEN {
            return Err(bad("stream shorter than the header"));
        }
        if &bytes[..4] != MAGIC {
            return Err(bad("bad magic"));
        }
        if bytes[4] != VERSION {
            return Err(bad("unsupported version"));
        }
        let word = |i: usize| u32::from_le_bytes(bytes[5 + 4 * i..9 + 4 * i].try_into().unwrap());
        let (m, rho, r, eta, levels) = (word(0), word(1), word(2), word(3), word(4));
        let delta = f64::from_le_bytes(bytes[25..33].try_into().unwrap());
        let flags = bytes[33];
        if m == 0 {
            return Err(bad("m = 0"));
        }
        if rho == 0 || rho > m {
            return Err(bad("rho outside 1..=m"));
        }
        if r == 0 {
            return Err(bad("r = 0"));
        }
        if eta != m / rho {
            return Err(bad("eta != floor(m / rho)"));
        }
        if levels == 0 {
            return Err(bad("L = 0"));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(bad("delta must be finite and positive"));
        }
        if flags > 1 {
            return Err(bad("unknown flag bits"));
        }
        let h = Self { m, rho, r, eta, levels, delta, complex_mode: flags == 1 };
        if h.width() > 128 || h.rho_pow_r().is_none() || h.n_max().is_none() {
            return Err(bad("parameters too large for this codec"));
        }
        Ok(h)
    }

    /// Lattice integer N of a real component.
    fn lattice_int(&self, t: f64, index: usize) -> Result<i128> {
        let rr = self.rho_pow_r().expect("checked") as f64;
        let nf = t * 2.0 * rr / self.delta;
        let n = nf.round();
        let dev = (nf - n).abs();
        if !nf.is_finite() || dev > tol::LATTICE * nf.abs().max(1.0) {
            return Err(Error::OffLattice { index, deviation: dev });
        }
        Ok(n as i128)
    }

    fn offset_of(&self, n: i128, index: usize) -> Result<u128> {
        let (rho, l) = (self.rho as i128, self.levels as i128);
        let width = self.width();
        if self.r == 1 {
            if (n - rho).rem_euclid(2) != 0 {
                return Err(Error::OffLattice { index, deviation: 1.0 });
            }
            let off = (n - rho) / 2 + l * rho;
            if off < 0 || off > (2 * l - 1) * rho {
                return Err(Error::RangeOverflow { index, value: n, width });
            }
            Ok(off as u128)
        } else {
            let nm = self.n_max().expect("checked");
            if n.abs() > nm {
                return Err(Error::RangeOverflow { index, value: n, width });
            }
            Ok((n + nm) as u128)
        }
    }

    fn value_of(&self, off: u128, index: usize) -> Result<f64> {
        let (rho, l) = (self.rho as i128, self.levels as i128);
        let n = if self.r == 1 {
            if off as i128 > (2 * l - 1) * rho {
                return Err(Error::RangeOverflow { index, value: off as i128, width: self.width() });
            }
            2 * (off as i128 - l * rho) + rho
        } else {
            let nm = self.n_max().expect("checked");
            if off as i128 > 2 * nm {
                return Err(Error::RangeOverflow { index, value: off as i128, width: self.width() });
            }
            off as i128 - nm
        };
        // same rounding as the decimator: exact half-δ multiple, one division by ρʳ
        Ok((n as f64 * self.delta / 2.0) / self.rho_pow_r().expect("checked") as f64)
    }
}

/// Decimated samples as lattice offsets plus the header describing them.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBlock {
    pub header: Header,
    /// Per entry: real offset, then imaginary offset in complex mode.
    pub offsets: Vec<u128>,
}

impl LatticeBlock {
    pub fn from_values(v: &[C64], plan: &DecimationPlan, a: &Alphabet) -> Result<Self> {
        let header = Header::new(plan, a)?;
        Header::parse(&header.to_bytes())?;
        if v.len() != plan.eta {
            return Err(Error::DimensionMismatch { expected: plan.eta, actual: v.len() });
        }
        let mut offsets = Vec::with_capacity(v.len() * header.components());
        for (i, z) in v.iter().enumerate() {
            offsets.push(header.offset_of(header.lattice_int(z.re, i)?, i)?);
            if a.complex_mode {
                offsets.push(header.offset_of(header.lattice_int(z.im, i)?, i)?);
            } else if z.im != 0.0 {
                return Err(Error::OffLattice { index: i, deviation: z.im.abs() });
            }
        }
        Ok(Self { header, offsets })
    }

    pub fn values(&self) -> Result<ComplexVector> {
        let h = &self.header;
        let c = h.components();
        (0..h.eta as usize)
            .map(|i| {
                let re = h.value_of(self.offsets[c * i], i)?;
                let im = if c == 2 { h.value_of(self.offsets[c * i + 1], i)? } else { 0.0 };
                Ok(C64::new(re, im))
            })
            .collect()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = self.header.to_bytes().to_vec();
        let w = self.header.width();
        let mut writer = BitWriter::default();
        for &o in &self.offsets {
            writer.push(o, w);
        }
        out.extend(writer.finish());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let header = Header::parse(bytes)?;
        let need = header.payload_bytes();
        let payload = &bytes[HEADER_LEN..];
        if payload.len() < need {
            return Err(Error::TruncatedPayload { needed: HEADER_LEN + need, available: bytes.len() });
        }
        if payload.len() > need {
            return Err(Error::TrailingBytes(payload.len() - need));
        }
        let w = header.width();
        let count = header.eta as usize * header.components();
        let mut reader = BitReader { bytes: payload, pos: 0 };
        let offsets = (0..count).map(|_| reader.take(w)).collect();
        Ok(Self { header, offsets })
    }
}

#[derive(Default)]
struct BitWriter {
    bytes: Vec<u8>,
    used: u32,
}

impl BitWriter {
    fn push(&mut self, value: u128, width: u32) {
        for b in (0..width).rev() {
            if self.used % 8 == 0 {
                self.bytes.push(0);
            }
            let bit = ((value >> b) & 1) as u8;
            *self.bytes.last_mut().unwrap() |= bit << (7 - self.used % 8);
            self.used += 1;
        }
    }

    fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn take(&mut self, width: u32) -> u128 {
        let mut v = 0u128;
        for _ in 0..width {
            let bit = (self.bytes[self.pos / 8] >> (7 - self.pos % 8)) & 1;
            v = (v << 1) | bit as u128;
            self.pos += 1;
        }
        v
    }
}

/// Encodes decimated samples (the output of `decimate` on alphabet-valued q).
pub fn encode(v: &[C64], plan: &DecimationPlan, a: &Alphabet) -> Result<Vec<u8>> {
    Ok(LatticeBlock::from_values(v, plan, a)?.to_bytes())
}

pub fn decode(stream: &[u8]) -> Result<ComplexVector> {
    LatticeBlock::from_bytes(stream)?.values()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        // (2L−1)ρ+1 = 3 lattice points for ρ = 2, L = 1 → 2 bits
        assert_eq!(component_width(4, 2, 1, 1), 2);
        assert_eq!(component_width(130, 2, 1, 100), 9);
        assert_eq!(component_width(8, 2, 2, 1), 8); // (2·1·8)² = 256
        assert_eq!(component_width(9, 3, 2, 1), 9); // 18² = 324
    }

    #[test]
    fn bit_packing_round_trip() {
        let mut w = BitWriter::default();
        let vals = [0u128, 5, 7, 1, 3];
        for v in vals {
            w.push(v, 3);
        }
        let bytes = w.finish();
        assert_eq!(bytes.len(), 2);
        let mut r = BitReader { bytes: &bytes, pos: 0 };
        assert_eq!(vals.map(|_| r.take(3)), vals);
        // 000 101 111 001 011 → 0001_0111 1001_0110
        assert_eq!(bytes, vec![0b0001_0111, 0b1001_0110]);
    }
}
