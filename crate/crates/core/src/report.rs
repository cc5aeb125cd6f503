use std::fmt;

use serde::Serialize;

/// Which law or structural rule a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    DanglingReference,
    DuplicateName,
    IdentityTable,
    MissingComposite,
    IllTypedComposite,
    ExtraComposite,
    IdentityLaw,
    Associativity,
    FunctorShape,
    EndpointPreservation,
    IdentityPreservation,
    CompositionPreservation,
    ComponentShape,
    Naturality,
    NotIsomorphism,
    IncompleteAction,
    IllTypedAction,
    IdentityAction,
    CovariantFunctoriality,
    ContravariantFunctoriality,
    MixedAssociativity,
    Bijectivity,
    Representation,
}

impl Law {
    pub fn label(self) -> &'static str {
        match self {
            Law::DanglingReference => "dangling reference",
            Law::DuplicateName => "duplicate name",
            Law::IdentityTable => "identity table",
            Law::MissingComposite => "missing composite",
            Law::IllTypedComposite => "ill-typed composite",
            Law::ExtraComposite => "composite of non-composable pair",
            Law::IdentityLaw => "identity law",
            Law::Associativity => "associativity",
            Law::FunctorShape => "functor shape",
            Law::EndpointPreservation => "endpoint preservation",
            Law::IdentityPreservation => "identity preservation",
            Law::CompositionPreservation => "composition preservation",
            Law::ComponentShape => "component shape",
            Law::Naturality => "naturality",
            Law::NotIsomorphism => "component not an isomorphism",
            Law::IncompleteAction => "incomplete action table",
            Law::IllTypedAction => "ill-typed action",
            Law::IdentityAction => "identity action",
            Law::CovariantFunctoriality => "covariant functoriality",
            Law::ContravariantFunctoriality => "contravariant functoriality",
            Law::MixedAssociativity => "mixed associativity",
            Law::Bijectivity => "bijectivity",
            Law::Representation => "representation",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.message)
    }
}

/// Outcome of a law check. Empty means the structure is valid.
///
/// At most [`ValidationReport::MAX_LISTED`] violations are kept per law; the
/// rest are only counted in `omitted`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Violation>,
    pub omitted: usize,
}

impl ValidationReport {
    pub const MAX_LISTED: usize = 25;

    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            violations: Vec::new(),
            omitted: 0,
        }
    }

    pub fn push(&mut self, law: Law, message: impl Into<String>) {
        let listed = self.violations.iter().filter(|v| v.law == law).count();
        if listed >= Self::MAX_LISTED {
            self.omitted += 1;
        } else {
            self.violations.push(Violation {
                law,
                message: message.into(),
            });
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.omitted == 0
    }

    pub fn has(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for v in other.violations {
            self.push(v.law, v.message);
        }
        self.omitted += other.omitted;
    }

    pub(crate) fn into_result<T>(self, value: T) -> Result<T, ValidationReport> {
        if self.is_valid() {
            Ok(value)
        } else {
            Err(self)
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "{}: valid", self.subject);
        }
        write!(f, "{}: {} violation(s)", self.subject, self.violations.len() + self.omitted)?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        if self.omitted > 0 {
            write!(f, "\n  ... and {} more", self.omitted)?;
        }
        Ok(())
    }
}
