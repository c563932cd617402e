//! Pattern-parallel generation.

use std::num::NonZeroUsize;
use std::thread;

use wogli_core::generator::{assemble, sample_pattern, GenError, PremiseInstance};
use wogli_core::{GeneratedSet, GenerationConfig, Lexicon, SetName};

type PatternDraws<'a> = Result<Vec<PremiseInstance<'a>>, GenError>;

/// Generates `set` with up to `workers` threads. Pattern `i` is handled by
/// worker `i % workers`; results are reassembled by pattern index, so the
/// output never depends on the worker count.
pub fn generate_parallel<'a>(
    set: SetName,
    lex: &'a Lexicon,
    config: &GenerationConfig,
    workers: NonZeroUsize,
) -> Result<GeneratedSet<'a>, GenError> {
    let patterns = set.patterns().len();
    let workers = workers.get().min(patterns.max(1));
    let mut slots: Vec<Option<PatternDraws<'a>>> = (0..patterns).map(|_| None).collect();

    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w..patterns)
                        .step_by(workers)
                        .map(|idx| (idx, sample_pattern(lex, set, idx, config)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (idx, draws) in handle.join().expect("generation worker panicked") {
                slots[idx] = Some(draws);
            }
        }
    });

    let mut draws = Vec::new();
    for slot in slots {
        draws.extend(slot.expect("every pattern sampled")?);
    }
    assemble(set, draws, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wogli_core::generator::generate_set;

    #[test]
    fn matches_sequential() {
        let lex = Lexicon::bundled();
        let config = GenerationConfig::new(13, 7);
        let seq = generate_set(SetName::Dative, &lex, &config).unwrap();
        for w in [1, 3, 8, 64] {
            let par = generate_parallel(SetName::Dative, &lex, &config, NonZeroUsize::new(w).unwrap()).unwrap();
            assert_eq!(par, seq);
        }
    }
}
