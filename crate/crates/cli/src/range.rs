use std::str::FromStr;

use crate::CliError;

/// An inclusive integer range given as `n` or `a..b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn single(v: i64) -> Self {
        IntRange { lo: v, hi: v }
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }

    pub fn values(&self) -> Vec<i64> {
        (self.lo..=self.hi).collect()
    }
}

impl FromStr for IntRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CliError::Usage(format!("malformed range {s:?}; expected N or A..B"));
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        match s.split_once("..") {
            None => parse(s).map(IntRange::single),
            Some((a, b)) => {
                let (lo, hi) = (parse(a)?, parse(b)?);
                if lo > hi {
                    return Err(CliError::Usage(format!("empty range {s:?}")));
                }
                Ok(IntRange { lo, hi })
            }
        }
    }
}

/// Writes a doubled half-integer as `"3/2"`, `"-1/2"` or `"2"`.
pub fn half_string(two_x: i64) -> String {
    if two_x % 2 == 0 {
        (two_x / 2).to_string()
    } else {
        format!("{two_x}/2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!("-2".parse::<IntRange>().unwrap(), IntRange::single(-2));
        assert_eq!("-3..3".parse::<IntRange>().unwrap(), IntRange { lo: -3, hi: 3 });
        assert!("3..1".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
        assert!("1..".parse::<IntRange>().is_err());
    }

    #[test]
    fn halves() {
        assert_eq!(half_string(3), "3/2");
        assert_eq!(half_string(-1), "-1/2");
        assert_eq!(half_string(-4), "-2");
    }
}
