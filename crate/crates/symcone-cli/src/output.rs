//! JSON output with every float rendered to 17 significant digits, which is
//! enough to reparse the exact `f64`.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;
use symcone::error::Error;

#[derive(Clone, Copy, Debug, Default)]
pub struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_sci_string(v: &Value) -> Result<String, Error> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    v.serialize(&mut ser)
        .map_err(|e| Error::Encoding(format!("serialization: {e}")))?;
    String::from_utf8(out).map_err(|e| Error::Encoding(format!("utf8: {e}")))
}
