//! Text syntax: `3,3,3,1~,1` for overpartitions (`~` marks an overlined
//! part) and `[3^1 | 3,3,1~,1]` for bipartitions.

use std::str::FromStr;

use super::{Bipartition, Overpartition, PartitionError};

fn parse_error(input: &str, reason: impl Into<String>) -> PartitionError {
    PartitionError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

impl FromStr for Overpartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        if body.is_empty() {
            return Err(PartitionError::Empty);
        }
        let mut parts = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            let (digits, over) = match token.strip_suffix('~') {
                Some(d) => (d.trim_end(), true),
                None => (token, false),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_error(s, format!("`{token}` is not a part")));
            }
            let part: u64 = digits
                .parse()
                .map_err(|_| parse_error(s, format!("part `{digits}` is out of range")))?;
            parts.push((part, over));
        }
        Overpartition::from_parts(&parts)
    }
}

impl FromStr for Bipartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| parse_error(s, "expected `[t^a | parts]`"))?;
        let (first, second) = inner
            .split_once('|')
            .ok_or_else(|| parse_error(s, "missing `|` between the subpartitions"))?;
        let (t, count) = first
            .trim()
            .split_once('^')
            .ok_or_else(|| parse_error(s, "first subpartition must be written `t^a`"))?;
        let t: u64 = t
            .trim()
            .parse()
            .map_err(|_| parse_error(s, format!("bad t `{t}`")))?;
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| parse_error(s, format!("bad count `{count}`")))?;
        let second: Overpartition = second.parse()?;
        Bipartition::new(t, count, second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_text() {
        let p: Overpartition = "3,3,3,1~,1".parse().unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.weight(), 11);
        assert_eq!(p.num_overlined(), 1);
        assert_eq!(p.to_string(), "3,3,3,1~,1");
        let spaced: Overpartition = " 7 , 4~ ".parse().unwrap();
        assert_eq!(spaced.to_string(), "7,4~");
    }

    #[test]
    fn normalizes_overline_position() {
        let p: Overpartition = "3,3~,3".parse().unwrap();
        assert_eq!(p.to_string(), "3~,3,3");
    }

    #[test]
    fn rejects_non_canonical() {
        for bad in ["", "1,2", "3~,3~", "3,,1", "a", "3~~", "-1", "0", "1.5"] {
            assert!(bad.parse::<Overpartition>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn bipartition_syntax() {
        let b: Bipartition = "[3^1 | 3,3,1~,1]".parse().unwrap();
        assert_eq!((b.t(), b.t_count()), (3, 1));
        assert_eq!(b.to_string(), "[3^1 | 3,3,1~,1]");
        let b: Bipartition = "[3^0|3~,3]".parse().unwrap();
        assert_eq!(b.to_string(), "[3^0 | 3~,3]");
        for bad in [
            "3^1 | 1",
            "[3^1 1]",
            "[3 | 1]",
            "[3^1 | ]",
            "[3^1 | 4]",
            "[0^1 | 1]",
        ] {
            assert!(bad.parse::<Bipartition>().is_err(), "{bad:?}");
        }
    }

    fn arb_overpartition() -> impl Strategy<Value = Overpartition> {
        prop::collection::btree_map(1u64..40, (1u64..4, any::<bool>()), 1..6).prop_map(|m| {
            let runs = m
                .into_iter()
                .rev()
                .map(
                    |(part, (multiplicity, first_overlined))| super::super::Run {
                        part,
                        multiplicity,
                        first_overlined,
                    },
                )
                .collect();
            Overpartition::from_runs(runs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_overpartition()) {
            let text = p.to_string();
            prop_assert_eq!(text.parse::<Overpartition>().unwrap(), p);
        }
    }
}
