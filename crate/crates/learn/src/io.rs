//! Model serialization: magic "ANET", version u16, precision byte
//! (32 or 16), width count, widths as u32, then per affine layer the
//! row-major weight matrix followed by the bias vector, little-endian,
//! 4 bytes per scalar at 32-bit precision and 2 at 16-bit.

use crate::network::{LearnError, Network, NetworkArchitecture, Precision};
use half::f16;
use ndarray::{Array1, Array2};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: &[u8; 4] = b"ANET";
const VERSION: u16 = 1;

fn write_scalar(w: &mut impl Write, v: f32, p: Precision) -> std::io::Result<()> {
    match p {
        Precision::F32 => w.write_all(&v.to_le_bytes()),
        Precision::F16 => w.write_all(&f16::from_f32(v).to_le_bytes()),
    }
}

fn read_scalar(r: &mut impl Read, p: Precision) -> std::io::Result<f32> {
    Ok(match p {
        Precision::F32 => {
            let mut b = [0u8; 4];
            r.read_exact(&mut b)?;
            f32::from_le_bytes(b)
        }
        Precision::F16 => {
            let mut b = [0u8; 2];
            r.read_exact(&mut b)?;
            f16::from_le_bytes(b).to_f32()
        }
    })
}

pub fn write_model(net: &Network, path: &Path) -> Result<(), LearnError> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    let p = net.precision();
    w.write_all(&[match p {
        Precision::F32 => 32u8,
        Precision::F16 => 16u8,
    }])?;
    let widths = net.architecture().widths();
    w.write_all(&[widths.len() as u8])?;
    for &width in &widths {
        w.write_all(&(width as u32).to_le_bytes())?;
    }
    for (m, b) in net.weights.iter().zip(&net.biases) {
        for &v in m.iter() {
            write_scalar(&mut w, v, p)?;
        }
        for &v in b.iter() {
            write_scalar(&mut w, v, p)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_model(path: &Path) -> Result<Network, LearnError> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(LearnError::Format("bad magic, not a model file".into()));
    }
    let mut v = [0u8; 2];
    r.read_exact(&mut v)?;
    if u16::from_le_bytes(v) != VERSION {
        return Err(LearnError::Format(format!(
            "unsupported model version {}",
            u16::from_le_bytes(v)
        )));
    }
    let mut head = [0u8; 2];
    r.read_exact(&mut head)?;
    let precision = match head[0] {
        32 => Precision::F32,
        16 => Precision::F16,
        p => return Err(LearnError::Format(format!("unknown precision byte {p}"))),
    };
    let count = head[1] as usize;
    if count < 2 {
        return Err(LearnError::Format("model needs at least two layer widths".into()));
    }
    let mut widths = Vec::with_capacity(count);
    for _ in 0..count {
        let mut b = [0u8; 4];
        r.read_exact(&mut b)?;
        widths.push(u32::from_le_bytes(b) as usize);
    }
    let arch = NetworkArchitecture::new(
        widths[0],
        widths[1..count - 1].to_vec(),
        widths[count - 1],
    )
    .map_err(|e| LearnError::Format(e.to_string()))?;

    let mut weights = Vec::new();
    let mut biases = Vec::new();
    for w in widths.windows(2) {
        let (fan_in, fan_out) = (w[0], w[1]);
        let mut m = Array2::zeros((fan_out, fan_in));
        for v in m.iter_mut() {
            *v = read_scalar(&mut r, precision)?;
        }
        let mut b = Array1::zeros(fan_out);
        for v in b.iter_mut() {
            *v = read_scalar(&mut r, precision)?;
        }
        weights.push(m);
        biases.push(b);
    }
    Ok(Network::from_parts(arch, weights, biases, precision))
}
