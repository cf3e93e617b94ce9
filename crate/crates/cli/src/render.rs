//! Plain-text rendering of complex matrices and spectra.

use spinqfi_core::{Complex64, HermitianMatrix, SymmetricMatrix3};

pub fn complex(z: Complex64) -> String {
    format!("{:+.12}{:+.12}i", z.re, z.im)
}

pub fn vector(v: &[Complex64]) -> String {
    let parts: Vec<String> = v.iter().map(|&z| complex(z)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn hermitian(m: &HermitianMatrix) -> String {
    let mut out = String::new();
    for row in 0..m.dim() {
        out.push_str("  ");
        for col in 0..m.dim() {
            out.push_str(&complex(m.get(row, col)));
            if col + 1 < m.dim() {
                out.push(' ');
            }
        }
        out.push('\n');
    }
    out
}

pub fn sym3(c: &SymmetricMatrix3) -> String {
    let mut out = String::new();
    for row in c.rows() {
        out.push_str(&format!(
            "  [{:+.12} {:+.12} {:+.12}]\n",
            row[0], row[1], row[2]
        ));
    }
    out
}
