use parking_core::exactmath::to_decimal;
use parking_core::Rational;

pub const SIGNIFICANT_DIGITS: u32 = 12;

/// Exact decimal rendering of a float with 12 significant digits.
pub fn float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.into();
    }
    let exact = Rational::from_float(v).expect("finite float");
    to_decimal(&exact, SIGNIFICANT_DIGITS)
}

pub fn decimal(q: &Rational) -> String {
    to_decimal(q, SIGNIFICANT_DIGITS)
}

/// `num/den`, always with an explicit denominator.
pub fn fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// CSV document built in memory, so a failure never leaves partial output.
#[derive(Debug, Default)]
pub struct Table {
    text: String,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut table = Table::default();
        table.push(header.iter().map(|h| h.to_string()));
        table
    }

    pub fn push<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for field in fields {
            if !first {
                self.text.push(',');
            }
            self.text.push_str(field.as_ref());
            first = false;
        }
        self.text.push('\n');
    }

    pub fn comment(&mut self, line: &str) {
        self.text.push_str("# ");
        self.text.push_str(line);
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
