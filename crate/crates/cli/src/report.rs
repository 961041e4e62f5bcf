//! Structured output: one JSON object per line, tagged by `type`.

use anaprop::decider::Reason;
use anaprop::terms::{RewriteRule, Term};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    /// The procedure only establishes the positive case and did not.
    Undetermined,
}

impl Status {
    pub fn word(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub value: String,
    pub witnesses: Vec<RewriteRule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Record {
    Verdict {
        query: Vec<String>,
        engine: String,
        status: Status,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reason: Option<Reason>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arrow: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<RewriteRule>,
        detail: String,
    },
    Solutions {
        query: Vec<String>,
        engine: String,
        /// `false` when the search is bounded and may miss solutions.
        complete: bool,
        solutions: Vec<Solution>,
    },
    Proportion {
        elements: [String; 4],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<RewriteRule>,
    },
    Term {
        term: Term,
    },
    Terms {
        terms: Vec<Term>,
    },
    Generalizations {
        a: String,
        b: String,
        common: Vec<String>,
        minimal: Vec<String>,
    },
}

impl Record {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_line(line: &str) -> serde_json::Result<Record> {
        serde_json::from_str(line)
    }
}
