//! Recorded hit counts: a fixture store for exact replay of past query
//! results, a write-through cache that records live results in the same
//! file format, and a noise-injection wrapper for robustness testing.
//!
//! File format (UTF-8, tab-separated, `#` comments):
//!
//! ```text
//! Q <canonical-query> <count>
//! S <canonical-query> <snippet text>
//! ```

use super::{BackendCapabilities, CorpusError, CountBackend, HitResult};
use crate::querygen::PhraseQuery;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;

/// A map from canonical query strings to recorded results. In strict mode a
/// missing entry is an error; otherwise it counts as zero hits.
#[derive(Debug, Clone, Default)]
pub struct FixtureStore {
    entries: HashMap<String, HitResult>,
    strict: bool,
}

impl FixtureStore {
    pub fn new(strict: bool) -> Self {
        FixtureStore {
            entries: HashMap::new(),
            strict,
        }
    }

    pub fn insert(&mut self, canonical: &str, count: u64, snippets: Vec<String>) {
        self.entries.insert(
            canonical.to_string(),
            HitResult {
                count,
                snippets,
                from_cache: false,
            },
        );
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parse(text: &str, strict: bool, path: &str) -> Result<Self, CorpusError> {
        let mut store = FixtureStore::new(strict);
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || CorpusError::MalformedFixture {
                path: path.to_string(),
                line: n + 1,
            };
            let mut fields = line.splitn(3, '\t');
            let kind = fields.next().ok_or_else(malformed)?;
            let query = fields.next().ok_or_else(malformed)?.to_string();
            let payload = fields.next().ok_or_else(malformed)?;
            match kind {
                "Q" => {
                    let count: u64 = payload.trim().parse().map_err(|_| malformed())?;
                    store.entries.insert(
                        query,
                        HitResult {
                            count,
                            snippets: Vec::new(),
                            from_cache: false,
                        },
                    );
                }
                "S" => {
                    let entry = store.entries.entry(query).or_insert_with(HitResult::empty);
                    entry.snippets.push(payload.to_string());
                }
                _ => return Err(malformed()),
            }
        }
        Ok(store)
    }

    pub fn from_file(path: &Path, strict: bool) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, strict, &path.display().to_string())
    }
}

impl CountBackend for FixtureStore {
    fn search(&self, query: &PhraseQuery, k: usize) -> Result<HitResult, CorpusError> {
        let key = query.canonical();
        match self.entries.get(&key) {
            Some(hit) => Ok(hit.clone().clamped(k)),
            None if self.strict => Err(CorpusError::FixtureMiss(key)),
            None => Ok(HitResult::empty()),
        }
    }

    fn capabilities(&self) -> BackendCapabilities {
        BackendCapabilities::default()
    }

    fn name(&self) -> &str {
        "fixture"
    }
}

/// Write-through cache around another backend. Results are kept in memory
/// and appended to a cache file in fixture format, so a cache written by one
/// run can be replayed as a fixture by the next.
pub struct CachingBackend<B> {
    inner: B,
    state: Mutex<CacheState>,
}

struct CacheState {
    entries: HashMap<String, HitResult>,
    file: Option<std::io::BufWriter<std::fs::File>>,
    path: String,
}

impl<B: CountBackend> CachingBackend<B> {
    pub fn new(inner: B, cache_file: Option<&Path>) -> Result<Self, CorpusError> {
        let (entries, file, path) = match cache_file {
            Some(p) => {
                let entries = if p.exists() {
                    FixtureStore::from_file(p, false)?.entries
                } else {
                    HashMap::new()
                };
                let file = std::fs::OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(p)
                    .map_err(|source| CorpusError::Io {
                        path: p.display().to_string(),
                        source,
                    })?;
                (
                    entries,
                    Some(std::io::BufWriter::new(file)),
                    p.display().to_string(),
                )
            }
            None => (HashMap::new(), None, String::new()),
        };
        Ok(CachingBackend {
            inner,
            state: Mutex::new(CacheState {
                entries,
                file,
                path,
            }),
        })
    }
}

impl<B: CountBackend> CountBackend for CachingBackend<B> {
    fn search(&self, query: &PhraseQuery, k: usize) -> Result<HitResult, CorpusError> {
        let key = query.canonical();
        {
            let state = self.state.lock().unwrap();
            if let Some(hit) = state.entries.get(&key) {
                let mut hit = hit.clone().clamped(k);
                hit.from_cache = true;
                return Ok(hit);
            }
        }
        // Fetch a full snippet batch so later calls with any k are covered.
        let batch = self.inner.capabilities().snippet_batch.max(k);
        let hit = self.inner.search(query, batch)?;
        let mut state = self.state.lock().unwrap();
        if let Some(f) = state.file.as_mut() {
            let write = (|| {
                writeln!(f, "Q\t{key}\t{}", hit.count)?;
                for s in &hit.snippets {
                    writeln!(f, "S\t{key}\t{s}")?;
                }
                f.flush()
            })();
            write.map_err(|source| CorpusError::Io {
                path: state.path.clone(),
                source,
            })?;
        }
        state.entries.insert(key, hit.clone());
        Ok(hit.clamped(k))
    }

    fn capabilities(&self) -> BackendCapabilities {
        self.inner.capabilities()
    }

    fn name(&self) -> &str {
        self.inner.name()
    }
}

/// Multiplies counts by a seeded per-query jitter factor, imitating the
/// estimated (non-exact) totals of commercial engines. Robustness testing
/// only.
pub struct JitterBackend<B> {
    inner: B,
    seed: u64,
    sigma: f64,
}

impl<B: CountBackend> JitterBackend<B> {
    pub fn new(inner: B, seed: u64, sigma: f64) -> Self {
        JitterBackend { inner, seed, sigma }
    }
}

impl<B: CountBackend> CountBackend for JitterBackend<B> {
    fn search(&self, query: &PhraseQuery, k: usize) -> Result<HitResult, CorpusError> {
        let mut hit = self.inner.search(query, k)?;
        if hit.count > 0 {
            use std::hash::{Hash, Hasher};
            let mut h = std::collections::hash_map::DefaultHasher::new();
            query.canonical().hash(&mut h);
            self.seed.hash(&mut h);
            let mut rng = ChaCha8Rng::seed_from_u64(h.finish());
            // Symmetric multiplicative noise around 1.
            let z: f64 = rng.gen_range(-1.0..1.0);
            let factor = (self.sigma * z).exp();
            hit.count = ((hit.count as f64) * factor).round().max(1.0) as u64;
        }
        Ok(hit)
    }

    fn capabilities(&self) -> BackendCapabilities {
        BackendCapabilities {
            exact_counts: false,
            ..self.inner.capabilities()
        }
    }

    fn name(&self) -> &str {
        "jitter"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::LocalIndex;

    fn q(canon: &str) -> PhraseQuery {
        PhraseQuery::parse_canonical(canon).unwrap()
    }

    #[test]
    fn fixture_round_trip_and_strictness() {
        let text = "# comment\nQ\tit is easy to\t3960\nS\tit is easy to\tIt is easy to see .\n";
        let lax = FixtureStore::parse(text, false, "t").unwrap();
        let hit = lax.search(&q("it is easy to"), 10).unwrap();
        assert_eq!(hit.count, 3960);
        assert_eq!(hit.snippets.len(), 1);
        assert_eq!(lax.search(&q("missing query"), 10).unwrap().count, 0);

        let strict = FixtureStore::parse(text, true, "t").unwrap();
        match strict.search(&q("missing query"), 10) {
            Err(CorpusError::FixtureMiss(key)) => assert_eq!(key, "missing query"),
            other => panic!("expected fixture miss, got {other:?}"),
        }
    }

    #[test]
    fn malformed_fixture_is_reported_with_line() {
        let err = FixtureStore::parse("Q\tonly two fields\n", false, "f.tsv").unwrap_err();
        match err {
            CorpusError::MalformedFixture { path, line } => {
                assert_eq!(path, "f.tsv");
                assert_eq!(line, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn snippet_count_is_clamped_to_hits() {
        let text = "Q\ta b\t1\nS\ta b\tfirst\nS\ta b\tsecond\n";
        let store = FixtureStore::parse(text, false, "t").unwrap();
        let hit = store.search(&q("a b"), 10).unwrap();
        assert_eq!(hit.count, 1);
        assert_eq!(hit.snippets.len(), 1);
    }

    #[test]
    fn cache_records_and_replays() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.tsv");
        let idx = LocalIndex::build(["it is easy to see why", "unrelated line"]);
        {
            let cached = CachingBackend::new(&idx, Some(&path)).unwrap();
            let first = cached.search(&q("it is easy to"), 10).unwrap();
            assert_eq!(first.count, 1);
            assert!(!first.from_cache);
            let second = cached.search(&q("it is easy to"), 10).unwrap();
            assert!(second.from_cache);
        }
        // The cache file is itself a fixture.
        let replay = FixtureStore::from_file(&path, true).unwrap();
        let hit = replay.search(&q("it is easy to"), 10).unwrap();
        assert_eq!(hit.count, 1);
        assert_eq!(hit.snippets.len(), 1);
    }

    #[test]
    fn jitter_is_deterministic_per_seed() {
        let idx = LocalIndex::build(vec!["it is easy to"; 100]);
        let a = JitterBackend::new(&idx, 7, 0.2);
        let b = JitterBackend::new(&idx, 7, 0.2);
        let c = JitterBackend::new(&idx, 8, 0.2);
        let qa = a.count(&q("it is easy to")).unwrap();
        assert_eq!(qa, b.count(&q("it is easy to")).unwrap());
        assert!(qa > 0);
        assert!(!a.capabilities().exact_counts);
        // A different seed is allowed to differ (and usually does).
        let _ = c.count(&q("it is easy to")).unwrap();
    }
}
