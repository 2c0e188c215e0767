//! Binary outcome labels shared by every table in the model.

/// Relabeling `0 <-> 1`. Applying it to states, signals and messages at once
/// maps the game onto itself.
pub trait Flip: Sized {
    #[must_use]
    fn flip(self) -> Self;
}

macro_rules! binary_label {
    ($(#[$doc:meta])* $name:ident { $zero:ident, $one:ident }) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $zero,
            $one,
        }

        impl $name {
            pub const ALL: [$name; 2] = [$name::$zero, $name::$one];

            #[inline]
            pub const fn index(self) -> usize {
                match self {
                    $name::$zero => 0,
                    $name::$one => 1,
                }
            }

            #[inline]
            pub const fn from_index(i: usize) -> Self {
                if i == 0 {
                    $name::$zero
                } else {
                    $name::$one
                }
            }

            #[inline]
            pub const fn is_one(self) -> bool {
                matches!(self, $name::$one)
            }
        }

        impl Flip for $name {
            #[inline]
            fn flip(self) -> Self {
                match self {
                    $name::$zero => $name::$one,
                    $name::$one => $name::$zero,
                }
            }
        }
    };
}

binary_label!(
    /// The state of the world that the worker forecasts.
    State { Omega0, Omega1 }
);
binary_label!(
    /// The worker's private signal.
    PrivateSignal { S0, S1 }
);
binary_label!(
    /// The algorithm's publicly observed signal.
    AlgoSignal { A0, A1 }
);
binary_label!(
    /// The worker's report to the manager.
    Message { M0, M1 }
);

/// Worker skill. Skill is not part of the label-flip involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WorkerType {
    Low,
    High,
}

impl WorkerType {
    pub const ALL: [WorkerType; 2] = [WorkerType::Low, WorkerType::High];

    #[inline]
    pub const fn index(self) -> usize {
        match self {
            WorkerType::Low => 0,
            WorkerType::High => 1,
        }
    }

    #[inline]
    pub const fn from_index(i: usize) -> Self {
        if i == 0 {
            WorkerType::Low
        } else {
            WorkerType::High
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            WorkerType::Low => "low",
            WorkerType::High => "high",
        }
    }
}

impl State {
    /// The signal value that "points at" this state.
    pub const fn signal(self) -> PrivateSignal {
        PrivateSignal::from_index(self.index())
    }
}

impl PrivateSignal {
    pub const fn agrees_with(self, a: AlgoSignal) -> bool {
        self.index() == a.index()
    }

    /// The message that repeats this signal.
    pub const fn message(self) -> Message {
        Message::from_index(self.index())
    }
}

impl AlgoSignal {
    pub const fn message(self) -> Message {
        Message::from_index(self.index())
    }
}

/// Compact name such as `s1`, used in reports and CSV/JSON keys.
pub trait Label {
    fn label(self) -> &'static str;
}

impl Label for State {
    fn label(self) -> &'static str {
        ["omega0", "omega1"][self.index()]
    }
}
impl Label for PrivateSignal {
    fn label(self) -> &'static str {
        ["s0", "s1"][self.index()]
    }
}
impl Label for AlgoSignal {
    fn label(self) -> &'static str {
        ["a0", "a1"][self.index()]
    }
}
impl Label for Message {
    fn label(self) -> &'static str {
        ["m0", "m1"][self.index()]
    }
}
impl Label for WorkerType {
    fn label(self) -> &'static str {
        self.name()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_is_an_involution() {
        for s in State::ALL {
            assert_eq!(s.flip().flip(), s);
            assert_ne!(s.flip(), s);
        }
        for m in Message::ALL {
            assert_eq!(m.flip().flip(), m);
        }
        assert_eq!(PrivateSignal::S0.flip(), PrivateSignal::S1);
        assert_eq!(AlgoSignal::A1.flip(), AlgoSignal::A0);
    }

    #[test]
    fn index_round_trips() {
        for i in 0..2 {
            assert_eq!(State::from_index(i).index(), i);
            assert_eq!(WorkerType::from_index(i).index(), i);
        }
        assert!(PrivateSignal::S1.agrees_with(AlgoSignal::A1));
        assert!(!PrivateSignal::S1.agrees_with(AlgoSignal::A0));
        assert_eq!(State::Omega1.signal(), PrivateSignal::S1);
    }
}
