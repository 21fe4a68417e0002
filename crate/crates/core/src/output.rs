//! CSV emission shared by the simulation drivers.

use crate::error::{Error, Result};

/// Formats with 17 significant digits so values round-trip exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Collects rows under a fixed header and renders them as CSV text.
pub struct CsvBuilder {
    writer: csv::Writer<Vec<u8>>,
    width: usize,
}

impl CsvBuilder {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(header)
            .expect("writing to memory cannot fail");
        Self {
            writer,
            width: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.width, "row width differs from header");
        self.writer
            .write_record(fields)
            .expect("writing to memory cannot fail");
    }

    pub fn finish(self) -> Result<String> {
        let bytes = self
            .writer
            .into_inner()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}
