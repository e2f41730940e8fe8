use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

/// Writes every float with 17 significant digits so the printed value
/// parses back to the same bits.
struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_string<S: Serialize>(value: &S) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, SigDigits);
    value.serialize(&mut ser).expect("output documents serialize");
    String::from_utf8(buf).expect("serde_json writes utf-8")
}

pub fn emit<S: Serialize>(value: &S) {
    println!("{}", to_string(value));
}
