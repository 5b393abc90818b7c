use std::io::{self, Write};

use hyperwave_core::validate::PHASE_THRESHOLD;
use hyperwave_core::{ComplexValue, Field2D};

use crate::args::Quantity;

impl Quantity {
    pub fn reduce(self, z: ComplexValue) -> f64 {
        match self {
            Quantity::Abs2 => z.norm_sqr(),
            Quantity::Re2 => z.re * z.re,
            Quantity::Im2 => z.im * z.im,
            Quantity::Re => z.re,
            Quantity::Im => z.im,
            Quantity::Phase if z.norm() > PHASE_THRESHOLD => z.arg(),
            Quantity::Phase => f64::NAN,
        }
    }

    pub fn is_nonnegative(self) -> bool {
        matches!(self, Quantity::Abs2 | Quantity::Re2 | Quantity::Im2)
    }
}

/// `u,v,value` rows with `v` outer and `u` inner.
pub fn write_csv<W: Write>(field: &Field2D, quantity: Quantity, w: W) -> io::Result<()> {
    let g = field.grid();
    let values: Vec<f64> = field.values().iter().map(|z| quantity.reduce(*z)).collect();
    write_grid_csv(&g.u_nodes(), &g.v_nodes(), &values, w)
}

/// `values` is indexed `j * us.len() + i`.
pub fn write_grid_csv<W: Write>(us: &[f64], vs: &[f64], values: &[f64], mut w: W) -> io::Result<()> {
    assert_eq!(values.len(), us.len() * vs.len(), "values must cover the grid");
    w.write_all(b"u,v,value\n")?;
    for (j, v) in vs.iter().enumerate() {
        for (i, u) in us.iter().enumerate() {
            writeln!(w, "{u},{v},{}", values[j * us.len() + i])?;
        }
    }
    w.flush()
}

/// One-dimensional series: a `u` column followed by named value columns.
pub fn write_csv_1d<W: Write>(header: &[&str], rows: &[Vec<f64>], mut w: W) -> io::Result<()> {
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    w.flush()
}

/// Plain-text greymap scaled so the field maximum maps to 255. The first
/// image row is `v_min`.
pub fn write_pgm<W: Write>(field: &Field2D, quantity: Quantity, w: W) -> io::Result<()> {
    let g = field.grid();
    let values: Vec<f64> = field.values().iter().map(|z| quantity.reduce(*z)).collect();
    write_grid_pgm(g.n_u, g.n_v, &values, w)
}

pub fn write_grid_pgm<W: Write>(width: usize, height: usize, values: &[f64], mut w: W) -> io::Result<()> {
    assert_eq!(values.len(), width * height, "values must cover the image");
    let max = values.iter().copied().fold(0.0, f64::max);
    writeln!(w, "P2\n{width} {height}\n255")?;
    for row in values.chunks(width) {
        let pixels: Vec<String> = row
            .iter()
            .map(|&x| {
                let level = if max > 0.0 {
                    (255.0 * x / max).round().clamp(0.0, 255.0)
                } else {
                    0.0
                };
                (level as u8).to_string()
            })
            .collect();
        writeln!(w, "{}", pixels.join(" "))?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperwave_core::Grid2D;

    fn render<F: Fn(&Field2D, &mut Vec<u8>) -> io::Result<()>>(field: &Field2D, f: F) -> String {
        let mut buf = Vec::new();
        f(field, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn zero_field_csv_has_header_and_four_rows() {
        let mut buf = Vec::new();
        write_grid_csv(&[0.0, 1.0], &[0.0, 1.0], &[0.0; 4], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "u,v,value\n0,0,0\n1,0,0\n0,1,0\n1,1,0\n"
        );
    }

    #[test]
    fn csv_rows_run_u_inside_v() {
        let grid = Grid2D::new(0.0, 1.0, 0.0, 2.0, 3, 3).unwrap();
        let field = Field2D::sample(grid, |u, v| ComplexValue::new(u + 10.0 * v, 0.0)).unwrap();
        let text = render(&field, |f, b| write_csv(f, Quantity::Re, b));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[2], "0.5,0,0.5");
        assert_eq!(lines[4], "0,1,10");
    }

    #[test]
    fn zero_field_pgm_is_black() {
        let field = Field2D::zeros(Grid2D::new(0.0, 1.0, 0.0, 1.0, 3, 3).unwrap());
        let text = render(&field, |f, b| write_pgm(f, Quantity::Abs2, b));
        assert_eq!(text, "P2\n3 3\n255\n0 0 0\n0 0 0\n0 0 0\n");
    }

    #[test]
    fn single_maximum_is_the_only_white_pixel() {
        let grid = Grid2D::new(0.0, 1.0, 0.0, 1.0, 4, 3).unwrap();
        let mut values = vec![ComplexValue::new(0.5, 0.0); 12];
        values[6] = ComplexValue::new(2.0, 0.0);
        let field = Field2D::from_values(grid, values).unwrap();
        let text = render(&field, |f, b| write_pgm(f, Quantity::Abs2, b));
        assert_eq!(text.matches("255").count(), 2);
        assert_eq!(text.lines().nth(4).unwrap(), "16 16 255 16");
    }

    #[test]
    fn phase_is_undefined_at_zero() {
        assert!(Quantity::Phase.reduce(ComplexValue::new(0.0, 0.0)).is_nan());
        assert_eq!(
            Quantity::Phase.reduce(ComplexValue::new(0.0, 2.0)),
            std::f64::consts::FRAC_PI_2
        );
        assert_eq!(Quantity::Im2.reduce(ComplexValue::new(1.0, -3.0)), 9.0);
    }
}
