use thiserror::Error;

use super::policy::BirdDecision;
use crate::sim::Heading;
use crate::text::{first_object, strip_code_fences};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse bird response: {message}")]
pub struct BirdParseError {
    pub message: String,
    pub raw: String,
}

const HEADING_KEY: &str = "new-heading";
const RATIONALE_KEY: &str = "rationale";

/// Byte offset just past `"key"` / `'key'` followed by optional whitespace and a colon.
fn find_key(object: &str, key: &str) -> Option<(usize, usize)> {
    for quote in ['"', '\''] {
        let needle = format!("{quote}{key}{quote}");
        let mut from = 0;
        while let Some(rel) = object[from..].find(&needle) {
            let start = from + rel;
            let after = start + needle.len();
            let rest = &object[after..];
            let trimmed = rest.trim_start();
            if let Some(value) = trimmed.strip_prefix(':') {
                let value_start = object.len() - value.len();
                return Some((start, value_start));
            }
            from = after;
        }
    }
    None
}

fn leading_number(s: &str) -> Option<f64> {
    let s = s.trim_start();
    let s = s.strip_prefix(['"', '\'']).unwrap_or(s);
    let end = s
        .char_indices()
        .find(|&(i, c)| !(c.is_ascii_digit() || c == '.' || ((c == '-' || c == '+') && i == 0) || c == 'e' || c == 'E'))
        .map_or(s.len(), |(i, _)| i);
    s[..end].parse::<f64>().ok().filter(|v| v.is_finite())
}

fn lenient(object: &str) -> Result<BirdDecision, String> {
    let (heading_key_at, heading_value_at) =
        find_key(object, HEADING_KEY).ok_or_else(|| format!("missing key {HEADING_KEY:?}"))?;
    let value = leading_number(&object[heading_value_at..])
        .ok_or_else(|| format!("{HEADING_KEY:?} is not a number"))?;
    let rationale = find_key(object, RATIONALE_KEY).map(|(_, start)| {
        let end = if heading_key_at > start { heading_key_at } else { object.len() - 1 };
        let raw = object[start..end].trim().trim_end_matches(',').trim();
        raw.trim_matches(|c| c == '"' || c == '\'').trim().to_string()
    });
    Ok(BirdDecision {
        new_heading: Heading::new(value).map_err(|e| e.to_string())?,
        rationale,
    })
}

fn strict(object: &str) -> Option<Result<BirdDecision, String>> {
    let value: serde_json::Value = serde_json::from_str(object).ok()?;
    let map = value.as_object()?;
    let heading = match map.get(HEADING_KEY) {
        Some(v) => v.as_f64().or_else(|| v.as_str().and_then(|s| s.trim().parse().ok())),
        None => return Some(Err(format!("missing key {HEADING_KEY:?}"))),
    };
    let Some(heading) = heading.filter(|h| h.is_finite()) else {
        return Some(Err(format!("{HEADING_KEY:?} is not a number")));
    };
    let rationale = map.get(RATIONALE_KEY).map(|r| match r.as_str() {
        Some(s) => s.to_string(),
        None => r.to_string(),
    });
    Some(Heading::new(heading).map(|new_heading| BirdDecision { new_heading, rationale }).map_err(|e| e.to_string()))
}

/// Decodes a flocking response into a [`BirdDecision`].
///
/// Takes the first object after removing markdown fences. Well-formed JSON is read
/// directly; otherwise the keys are located textually, which accepts the unquoted
/// free-text rationales models tend to produce. `new-heading` is required and numeric.
pub fn parse_bird_response(text: &str) -> Result<BirdDecision, BirdParseError> {
    let fail = |message: String| BirdParseError { message, raw: text.to_string() };
    let body = strip_code_fences(text);
    let object = first_object(body).ok_or_else(|| fail("no object found".into()))?;
    match strict(object) {
        Some(r) => r.map_err(fail),
        None => lenient(object).map_err(fail),
    }
}
