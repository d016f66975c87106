use super::Question;

/// Mean word length (letters and digits, punctuation trimmed) and word count.
pub fn word_stats(text: &str) -> (f64, usize) {
    let lens: Vec<usize> = text
        .split_whitespace()
        .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()).chars().count())
        .filter(|&n| n > 0)
        .collect();
    if lens.is_empty() {
        return (0.0, 0);
    }
    (lens.iter().sum::<usize>() as f64 / lens.len() as f64, lens.len())
}

/// `1 + round(4 * raw)` where raw blends miss rate (0.5), vocabulary
/// (0.3, mean word length / 10) and length (0.2, words / 60). Without a
/// correct rate the other two weights renormalize to 0.6 / 0.4.
pub fn text_difficulty(text: &str, correct_rate: Option<f64>) -> u8 {
    let (mean_len, words) = word_stats(text);
    let vocab = (mean_len / 10.0).clamp(0.0, 1.0);
    let len = (words as f64 / 60.0).clamp(0.0, 1.0);
    let raw = match correct_rate {
        Some(r) => 0.5 * (1.0 - r.clamp(0.0, 1.0)) + 0.3 * vocab + 0.2 * len,
        None => 0.6 * vocab + 0.4 * len,
    };
    (1.0 + (4.0 * raw).round()).clamp(1.0, 5.0) as u8
}

/// Scored on the stem only; options are too short to say much.
pub fn estimate_difficulty(q: &Question) -> u8 {
    text_difficulty(&q.text, q.stats.and_then(|s| s.correct_rate()))
}
