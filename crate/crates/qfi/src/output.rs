//! CSV rows and their serialization.

use std::io::Write;

pub const HEADER: [&str; 8] =
    ["run_id", "command", "model", "param_name", "param_value", "quantity", "value", "tolerance"];

/// Text of a CSV cell. Floats use the shortest round-trip form, switching to
/// exponent notation for very small or large magnitudes.
pub trait Cell {
    fn cell(&self) -> String;
}

impl Cell for f64 {
    fn cell(&self) -> String {
        // adding 0.0 turns −0 into +0
        let x = *self + 0.0;
        let a = x.abs();
        if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
            format!("{x:e}")
        } else {
            format!("{x}")
        }
    }
}

macro_rules! display_cell {
    ($($t:ty),*) => {$(
        impl Cell for $t {
            fn cell(&self) -> String {
                self.to_string()
            }
        }
    )*};
}

display_cell!(u8, usize, i64, bool, &str, String);

/// One data row; `run_id` and `command` are filled in when writing.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub model: String,
    pub param_name: String,
    pub param_value: String,
    pub quantity: String,
    pub value: String,
    pub tolerance: String,
}

impl Row {
    pub fn new(model: &str, quantity: impl Into<String>, value: impl Cell) -> Self {
        Self {
            model: model.to_string(),
            param_name: String::new(),
            param_value: String::new(),
            quantity: quantity.into(),
            value: value.cell(),
            tolerance: String::new(),
        }
    }

    pub fn param(mut self, name: &str, value: impl Cell) -> Self {
        self.param_name = name.to_string();
        self.param_value = value.cell();
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tolerance = format!("{tol:e}");
        self
    }

    pub fn is_error(&self) -> bool {
        self.quantity == "error"
    }
}

/// Writes the header and rows with LF line endings.
pub fn write_csv<W: Write>(out: W, run_id: &str, command: &str, rows: &[Row]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            run_id,
            command,
            &r.model,
            &r.param_name,
            &r.param_value,
            &r.quantity,
            &r.value,
            &r.tolerance,
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_crlf_free_rows() {
        let rows = vec![Row::new("kitaev_chain", "z2", 1usize).param("mu", 0.5).tol(1e-10)];
        let mut buf = Vec::new();
        write_csv(&mut buf, "abc", "index", &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "run_id,command,model,param_name,param_value,quantity,value,tolerance\n\
             abc,index,kitaev_chain,mu,0.5,z2,1,1e-10\n"
        );
    }

    #[test]
    fn float_cells() {
        assert_eq!(2.0.cell(), "2");
        assert_eq!((-0.25).cell(), "-0.25");
        assert_eq!(7.1e-13.cell(), "7.1e-13");
        assert_eq!(f64::INFINITY.cell(), "inf");
        assert_eq!((-0.0).cell(), "0");
        assert_eq!(4.5e-16.cell(), "4.5e-16");
    }

    #[test]
    fn fields_with_commas_are_quoted() {
        let rows = vec![Row::new("m", "finite_propagation@tol=1e-12,R=1", "true")];
        let mut buf = Vec::new();
        write_csv(&mut buf, "r", "locality", &rows).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("\"finite_propagation@tol=1e-12,R=1\""));
    }
}
