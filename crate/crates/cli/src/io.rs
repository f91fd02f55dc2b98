//! Signal readers and coefficient writers.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use image::codecs::pnm::{PnmDecoder, PnmSubtype, SampleEncoding};
use image::ImageDecoder;
use num_complex::Complex64;
use npyz::{DType, WriterBuilder};
use scatter_core::RealGrid;

use crate::failure::Failure;

const NPY_MAGIC: &[u8; 6] = b"\x93NUMPY";

/// Reads a signal, choosing the decoder by file extension.
pub fn read_input(path: &Path, dim: usize) -> Result<RealGrid, Failure> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    let open = || {
        File::open(path)
            .map(BufReader::new)
            .map_err(|e| Failure::input(format!("cannot open {}: {e}", path.display())))
    };
    match (ext.as_str(), dim) {
        ("npy", _) => read_npy(open()?, dim),
        ("wav", 1) => read_wav(open()?),
        ("pgm", 2) => read_pgm(open()?),
        ("wav", _) | ("pgm", _) => Err(Failure::contract(format!(
            ".{ext} input is not supported for --dim {dim}"
        ))),
        _ => Err(Failure::input(format!(
            "unsupported input extension for {} (expected .npy, .wav or .pgm)",
            path.display()
        ))),
    }
}

pub fn read_npy(mut reader: impl Read, dim: usize) -> Result<RealGrid, Failure> {
    let mut preamble = [0u8; 8];
    reader
        .read_exact(&mut preamble)
        .map_err(|_| Failure::input("truncated NPY file"))?;
    if &preamble[..6] != NPY_MAGIC {
        return Err(Failure::input("not an NPY file (bad magic)"));
    }
    if preamble[6..] != [1, 0] {
        return Err(Failure::input(format!(
            "unsupported NPY version {}.{} (expected 1.0)",
            preamble[6], preamble[7]
        )));
    }
    let npy = npyz::NpyFile::new(preamble.chain(reader))
        .map_err(|e| Failure::input(format!("malformed NPY header: {e}")))?;
    if npy.order() != npyz::Order::C {
        return Err(Failure::input("Fortran-ordered NPY arrays are not supported"));
    }
    let descr = match npy.dtype() {
        DType::Plain(ts) => ts.to_string(),
        other => return Err(Failure::input(format!("unsupported NPY dtype {}", other.descr()))),
    };
    let shape: Vec<usize> = npy.shape().iter().map(|&n| n as usize).collect();
    if shape.len() != dim {
        return Err(Failure::contract(format!(
            "NPY array has {} dimensions, --dim is {dim}",
            shape.len()
        )));
    }
    let data: Vec<f64> = match descr.as_str() {
        "<f8" => npy.into_vec::<f64>(),
        "<f4" => npy.into_vec::<f32>().map(|v| v.into_iter().map(f64::from).collect()),
        _ => {
            return Err(Failure::input(format!(
                "unsupported NPY dtype {descr} (expected <f4 or <f8)"
            )))
        }
    }
    .map_err(|e| Failure::input(format!("cannot read NPY data: {e}")))?;
    grid(shape, data)
}

pub fn read_wav(reader: impl Read) -> Result<RealGrid, Failure> {
    let wav = hound::WavReader::new(reader).map_err(|e| Failure::input(format!("malformed WAV: {e}")))?;
    let spec = wav.spec();
    if spec.channels != 1 {
        return Err(Failure::input(format!(
            "WAV has {} channels; only mono input is accepted",
            spec.channels
        )));
    }
    if spec.sample_format != hound::SampleFormat::Int || spec.bits_per_sample != 16 {
        return Err(Failure::input("only 16-bit PCM WAV is accepted"));
    }
    let data = wav
        .into_samples::<i16>()
        .map(|s| s.map(|v| f64::from(v) / 32768.0))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::input(format!("cannot read WAV samples: {e}")))?;
    grid(vec![data.len()], data)
}

pub fn read_pgm(reader: impl Read) -> Result<RealGrid, Failure> {
    let decoder = PnmDecoder::new(BufReader::new(reader)).map_err(|e| Failure::input(format!("malformed PGM: {e}")))?;
    let header = decoder.header();
    if header.subtype() != PnmSubtype::Graymap(SampleEncoding::Binary) {
        return Err(Failure::input("only binary (P5) PGM is accepted"));
    }
    if header.maximal_sample() != 255 {
        return Err(Failure::input(format!(
            "PGM maxval {} is not supported (expected 255)",
            header.maximal_sample()
        )));
    }
    let (w, h) = decoder.dimensions();
    let mut buf = vec![0u8; decoder.total_bytes() as usize];
    decoder
        .read_image(&mut buf)
        .map_err(|e| Failure::input(format!("cannot read PGM pixels: {e}")))?;
    let data = buf.into_iter().map(|v| f64::from(v) / 255.0).collect();
    grid(vec![h as usize, w as usize], data)
}

fn grid(shape: Vec<usize>, data: Vec<f64>) -> Result<RealGrid, Failure> {
    let g = RealGrid::new(shape, data).map_err(|e| Failure::input(e.to_string()))?;
    if !g.is_finite() {
        return Err(Failure::input("input contains NaN or infinite samples"));
    }
    Ok(g)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::output(format!("cannot write {}: {e}", path.display())))
}

fn write_failed(path: &Path) -> impl Fn(std::io::Error) -> Failure + '_ {
    move |e| Failure::output(format!("cannot write {}: {e}", path.display()))
}

/// `<f8`, C-order.
pub fn write_npy_f64(path: &Path, shape: &[usize], data: &[f64]) -> Result<(), Failure> {
    let mut out = create(path)?;
    encode_npy(&mut out, shape, data.iter().copied()).map_err(write_failed(path))?;
    out.flush().map_err(write_failed(path))
}

/// `<c16`, C-order.
pub fn write_npy_c128(path: &Path, shape: &[usize], data: &[Complex64]) -> Result<(), Failure> {
    let mut out = create(path)?;
    encode_npy(&mut out, shape, data.iter().copied()).map_err(write_failed(path))?;
    out.flush().map_err(write_failed(path))
}

fn encode_npy<T, W>(w: W, shape: &[usize], data: impl Iterator<Item = T>) -> std::io::Result<()>
where
    T: npyz::AutoSerialize,
    W: Write,
{
    let shape: Vec<u64> = shape.iter().map(|&n| n as u64).collect();
    let mut writer = npyz::WriteOptions::new()
        .default_dtype()
        .shape(&shape)
        .writer(w)
        .begin_nd()?;
    writer.extend(data)?;
    writer.finish()
}

/// Writes `lines` with a trailing newline each.
pub fn write_lines(path: &Path, lines: impl IntoIterator<Item = String>) -> Result<(), Failure> {
    let mut out = create(path)?;
    for line in lines {
        writeln!(out, "{line}").map_err(write_failed(path))?;
    }
    out.flush().map_err(write_failed(path))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    let mut out = create(path)?;
    out.write_all(text.as_bytes()).map_err(write_failed(path))?;
    out.flush().map_err(write_failed(path))
}
