//! Point clouds as CSV: a `w1,w2` header, then one point per line with 17
//! significant digits.

use std::io::{self, Write};

pub fn write_cloud<W: Write>(mut out: W, points: &[[f64; 2]]) -> io::Result<()> {
    writeln!(out, "w1,w2")?;
    for p in points {
        writeln!(out, "{:.16e},{:.16e}", p[0], p[1])?;
    }
    out.flush()
}

pub fn cloud_to_string(points: &[[f64; 2]]) -> String {
    let mut buf = Vec::new();
    write_cloud(&mut buf, points).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}
