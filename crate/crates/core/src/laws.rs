//! Bookkeeping for exhaustive law checks.
//!
//! Every law in this crate is a universally quantified statement over a
//! finite domain. An [`Audit`] records, per law, how many tuples were
//! examined and which ones failed. Validators run audits in
//! [`Mode::FirstFailure`] and turn the first witness into an [`Error`];
//! reporting front-ends run them in [`Mode::AllWitnesses`].

use std::ops::ControlFlow;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    FirstFailure,
    AllWitnesses,
}

/// Outcome of one law over its whole quantifier domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub law: String,
    /// Number of tuples examined.
    pub domain: usize,
    pub failures: Vec<Error>,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug)]
pub struct Audit {
    mode: Mode,
    checks: Vec<LawCheck>,
}

pub(crate) type Flow = ControlFlow<()>;

impl Audit {
    pub fn new(mode: Mode) -> Self {
        Self { mode, checks: Vec::new() }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Opens a new law; subsequent ticks and failures are attributed to it.
    pub fn law(&mut self, name: impl Into<String>) {
        self.checks.push(LawCheck { law: name.into(), domain: 0, failures: Vec::new() });
    }

    pub fn tick(&mut self) {
        if let Some(check) = self.checks.last_mut() {
            check.domain += 1;
        }
    }

    /// Records a counterexample. Breaks when the audit is fail-fast.
    pub fn fail(&mut self, err: Error) -> Flow {
        match self.checks.last_mut() {
            Some(check) => check.failures.push(err),
            None => self.checks.push(LawCheck { law: "structure".into(), domain: 1, failures: vec![err] }),
        }
        match self.mode {
            Mode::FirstFailure => ControlFlow::Break(()),
            Mode::AllWitnesses => ControlFlow::Continue(()),
        }
    }

    /// Ticks and, when `ok` is false, records the failure built by `err`.
    pub fn expect(&mut self, ok: bool, err: impl FnOnce() -> Error) -> Flow {
        self.tick();
        if ok {
            ControlFlow::Continue(())
        } else {
            self.fail(err())
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&Error> {
        self.checks.iter().flat_map(|c| c.failures.iter()).next()
    }

    pub fn absorb(&mut self, checks: Vec<LawCheck>) -> Flow {
        let failed = checks.iter().any(|c| !c.passed());
        self.checks.extend(checks);
        if failed && self.mode == Mode::FirstFailure {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }

    pub fn into_checks(self) -> Vec<LawCheck> {
        self.checks
    }

    /// Pairs the audit with the value it was validating. The value is kept
    /// only when every law passed.
    pub fn conclude<T>(self, value: impl FnOnce() -> T) -> Audited<T> {
        let value = if self.passed() { Some(value()) } else { None };
        Audited { value, checks: self.checks }
    }
}

/// A value together with the law checks that admitted (or rejected) it.
#[derive(Debug, Clone)]
pub struct Audited<T> {
    pub value: Option<T>,
    pub checks: Vec<LawCheck>,
}

impl<T> Audited<T> {
    pub fn passed(&self) -> bool {
        self.value.is_some()
    }

    pub fn into_result(self) -> Result<T> {
        match self.value {
            Some(v) => Ok(v),
            None => Err(self
                .checks
                .into_iter()
                .flat_map(|c| c.failures)
                .next()
                .unwrap_or_else(|| Error::MalformedInput("audit rejected the value without a witness".into()))),
        }
    }
}
