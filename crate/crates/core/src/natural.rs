use core::fmt;
use core::num::NonZeroU64;

use crate::error::{Error, Result};

/// A positive integer, the argument of every arithmetic function here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(NonZeroU64);

impl Natural {
    pub const ONE: Natural = Natural(NonZeroU64::MIN);

    pub fn new(value: u64) -> Result<Self> {
        NonZeroU64::new(value)
            .map(Natural)
            .ok_or(Error::NotPositive)
    }

    #[inline]
    pub const fn get(self) -> u64 {
        self.0.get()
    }
}

impl TryFrom<u64> for Natural {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Natural::new(value)
    }
}

impl From<NonZeroU64> for Natural {
    fn from(value: NonZeroU64) -> Self {
        Natural(value)
    }
}

impl From<Natural> for u64 {
    fn from(n: Natural) -> u64 {
        n.get()
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
