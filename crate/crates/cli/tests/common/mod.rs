#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

pub fn wst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wst"))
        .args(args)
        .output()
        .expect("wst runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// RIFF/WAVE PCM, written byte by byte.
pub fn wav_bytes(channels: u16, samples: &[i16]) -> Vec<u8> {
    let data_len = (samples.len() * 2) as u32;
    let rate = 8000u32;
    let mut b = Vec::new();
    b.extend_from_slice(b"RIFF");
    b.extend_from_slice(&(36 + data_len).to_le_bytes());
    b.extend_from_slice(b"WAVEfmt ");
    b.extend_from_slice(&16u32.to_le_bytes());
    b.extend_from_slice(&1u16.to_le_bytes());
    b.extend_from_slice(&channels.to_le_bytes());
    b.extend_from_slice(&rate.to_le_bytes());
    b.extend_from_slice(&(rate * 2 * u32::from(channels)).to_le_bytes());
    b.extend_from_slice(&(2 * channels).to_le_bytes());
    b.extend_from_slice(&16u16.to_le_bytes());
    b.extend_from_slice(b"data");
    b.extend_from_slice(&data_len.to_le_bytes());
    for s in samples {
        b.extend_from_slice(&s.to_le_bytes());
    }
    b
}

pub fn pgm_bytes(w: usize, h: usize, maxval: u32, pixels: &[u8]) -> Vec<u8> {
    let mut b = format!("P5\n{w} {h}\n{maxval}\n").into_bytes();
    b.extend_from_slice(pixels);
    b
}

/// NPY v1.0 with the given descr; `payload` is already little-endian.
pub fn npy_bytes(descr: &str, shape: &[usize], payload: &[u8]) -> Vec<u8> {
    let dims: String = shape.iter().map(|n| format!("{n}, ")).collect();
    let mut header = format!("{{'descr': '{descr}', 'fortran_order': False, 'shape': ({dims}), }}");
    while (10 + header.len() + 1) % 64 != 0 {
        header.push(' ');
    }
    header.push('\n');
    let mut b = b"\x93NUMPY\x01\x00".to_vec();
    b.extend_from_slice(&(header.len() as u16).to_le_bytes());
    b.extend_from_slice(header.as_bytes());
    b.extend_from_slice(payload);
    b
}

pub fn f64_npy(shape: &[usize], data: &[f64]) -> Vec<u8> {
    let payload: Vec<u8> = data.iter().flat_map(|v| v.to_le_bytes()).collect();
    npy_bytes("<f8", shape, &payload)
}

#[derive(Debug)]
pub struct Npy {
    pub descr: String,
    pub fortran_order: bool,
    pub shape: Vec<usize>,
    pub payload: Vec<u8>,
}

impl Npy {
    pub fn f64s(&self) -> Vec<f64> {
        assert_eq!(self.descr, "<f8");
        self.payload
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect()
    }
}

/// Minimal NPY v1.0 parser following the format description.
pub fn parse_npy(bytes: &[u8]) -> Npy {
    assert_eq!(&bytes[..6], b"\x93NUMPY", "magic");
    assert_eq!(&bytes[6..8], &[1, 0], "version");
    let len = u16::from_le_bytes([bytes[8], bytes[9]]) as usize;
    assert_eq!((10 + len) % 16, 0, "header alignment");
    let header = std::str::from_utf8(&bytes[10..10 + len]).unwrap();
    assert!(header.ends_with('\n'));
    let field = |key: &str| {
        let start = header.find(&format!("'{key}':")).unwrap_or_else(|| panic!("no {key}")) + key.len() + 3;
        header[start..].trim_start().to_string()
    };
    let descr = field("descr");
    let descr = descr[1..].split('\'').next().unwrap().to_string();
    let fortran_order = field("fortran_order").starts_with("True");
    let shape_src = field("shape");
    let shape = shape_src[1..shape_src.find(')').unwrap()]
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().unwrap())
        .collect();
    Npy {
        descr,
        fortran_order,
        shape,
        payload: bytes[10 + len..].to_vec(),
    }
}

pub fn read_npy(path: &Path) -> Npy {
    parse_npy(&std::fs::read(path).unwrap())
}

/// Deterministic chirp in 16-bit range.
pub fn chirp(n: usize) -> Vec<i16> {
    (0..n)
        .map(|i| {
            let t = i as f64 / n as f64;
            (12000.0 * (2.0 * std::f64::consts::PI * (20.0 * t + 400.0 * t * t)).sin()) as i16
        })
        .collect()
}
