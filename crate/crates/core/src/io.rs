//! JSON instance files.
//!
//! ```json
//! {"n":2,"m":2,"utilities":[["1/2","1/2"],["1/4","3/4"]]}
//! ```
//!
//! Utilities are exact rational strings: an optional `-`, decimal digits and
//! an optional `/` followed by a nonzero decimal denominator. Written files are
//! canonical: lowest terms, integers without `/1`, no whitespace.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Instance, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub m: usize,
    pub utilities: Vec<Vec<String>>,
}

fn digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `-?digits(/digits)?` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let bad = || format!("malformed rational '{text}'");
    let mut numer = digits(num).ok_or_else(bad)?;
    let denom = match den {
        Some(d) => digits(d).ok_or_else(bad)?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in '{text}'"));
    }
    if negative {
        numer = -numer;
    }
    Ok(Rational::new(numer, denom))
}

/// Parses and validates an instance file.
pub fn parse_instance_file(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if file.utilities.len() != file.n {
        return Err(Error::Syntax {
            location: "utilities".into(),
            message: format!("{} rows but n = {}", file.utilities.len(), file.n),
        });
    }
    let mut rows = Vec::with_capacity(file.n);
    for (i, row) in file.utilities.iter().enumerate() {
        if row.len() != file.m {
            return Err(Error::Syntax {
                location: format!("utilities row {}", i + 1),
                message: format!("{} entries but m = {}", row.len(), file.m),
            });
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                parse_rational(s).map_err(|message| Error::Syntax {
                    location: format!("utilities row {}, entry {}", i + 1, j + 1),
                    message,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(parsed);
    }
    Instance::validate(rows)
}

/// Canonical serialization; `parse_instance_file` inverts it exactly.
pub fn write_instance_file(inst: &Instance) -> String {
    let file = InstanceFile {
        n: inst.agents(),
        m: inst.goods(),
        utilities: inst
            .rows()
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect(),
    };
    serde_json::to_string(&file).expect("instance file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::utilitarian_gap;
    use crate::random::random_instance;
    use crate::testutil::r;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rational_grammar() {
        assert_eq!(parse_rational("1/3").unwrap(), r(1, 3));
        assert_eq!(parse_rational("0").unwrap(), r(0, 1));
        assert_eq!(parse_rational("7/100").unwrap(), r(7, 100));
        assert_eq!(parse_rational("-2/4").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("12").unwrap(), r(12, 1));
        for bad in [
            "1//3", "", "/3", "1/", "+1", " 1", "1.5", "1/0", "--1", "1/-3", "a",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn parse_valid_file() {
        let i = parse_instance_file(r#"{"n":2, "m":2, "utilities":[["1/2","1/2"],["1/4","3/4"]]}"#)
            .unwrap();
        assert_eq!(i.rows()[1], vec![r(1, 4), r(3, 4)]);
    }

    #[test]
    fn parse_reports_row_sum() {
        let err = parse_instance_file(r#"{"n":2,"m":2,"utilities":[["1/2","1/3"],["1/4","3/4"]]}"#)
            .unwrap_err();
        assert_eq!(
            err,
            Error::RowSumNotOne {
                agent: 1,
                sum: "5/6".into()
            }
        );
    }

    #[test]
    fn parse_reports_syntax_errors() {
        let err =
            parse_instance_file(r#"{"n":2,"m":2,"utilities":[["1//3","2/3"],["1/4","3/4"]]}"#)
                .unwrap_err();
        assert!(
            matches!(err, Error::Syntax { ref location, .. } if location == "utilities row 1, entry 1")
        );
        let err = parse_instance_file("{\"n\":2,\n\"m\":}").unwrap_err();
        assert!(
            matches!(err, Error::Syntax { ref location, .. } if location.starts_with("line 2"))
        );
        assert!(matches!(
            parse_instance_file(r#"{"n":3,"m":1,"utilities":[["1"],["1"]]}"#),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_instance_file(r#"{"n":2,"m":1,"utilities":[["1"],["1"]],"extra":1}"#),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn canonical_output() {
        let text = write_instance_file(&utilitarian_gap(&r(1, 100)).unwrap());
        assert_eq!(
            text,
            r#"{"n":2,"m":3,"utilities":[["1/2","1/2","0"],["49/100","49/100","1/50"]]}"#
        );
        let id = Instance::validate(vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(1, 1)]]).unwrap();
        assert_eq!(
            write_instance_file(&id),
            r#"{"n":2,"m":2,"utilities":[["1","0"],["0","1"]]}"#
        );
        let again = write_instance_file(&parse_instance_file(&text).unwrap());
        assert_eq!(again, text);
    }

    proptest! {
        #[test]
        fn round_trip(seed in any::<u64>(), n in 2usize..=4, m in 1usize..=6) {
            let inst = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, m, 50);
            let text = write_instance_file(&inst);
            prop_assert_eq!(parse_instance_file(&text).unwrap(), inst);
        }

        #[test]
        fn rational_strings_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let v = r(p, q);
            prop_assert_eq!(parse_rational(&v.to_string()).unwrap(), v);
        }
    }
}
