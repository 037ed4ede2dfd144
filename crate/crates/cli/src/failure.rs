/// Why a run stopped; decides the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable or invalid inputs (exit 1).
    Input(anyhow::Error),
    /// The run itself failed after its inputs were accepted (exit 2).
    Runtime(anyhow::Error),
}

pub type Outcome<T = ()> = Result<T, Failure>;

/// Tags an error with the phase it happened in.
pub trait Classify<T> {
    fn input(self) -> Outcome<T>;
    fn runtime(self) -> Outcome<T>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn input(self) -> Outcome<T> {
        self.map_err(|e| Failure::Input(e.into()))
    }

    fn runtime(self) -> Outcome<T> {
        self.map_err(|e| Failure::Runtime(e.into()))
    }
}
