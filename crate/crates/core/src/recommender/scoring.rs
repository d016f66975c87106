use std::collections::BTreeSet;

use chrono::{DateTime, Utc};

use super::types::{CandidateProfile, GeoPoint, JobPosting};
use super::RecommendError;

pub const EARTH_RADIUS_KM: f64 = 6371.0;
pub const LOCATION_RADIUS_KM: f64 = 50.0;
pub const LOCATION_DECAY_KM: f64 = 50.0;
pub const RECENCY_HALF_LIFE_DAYS: f64 = 7.0;

/// |a ∩ b| / |a ∪ b|, and 0 when both are empty.
pub fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

pub fn haversine_km(a: GeoPoint, b: GeoPoint) -> Result<f64, RecommendError> {
    a.validate()?;
    b.validate()?;
    let (p1, p2) = (a.lat.to_radians(), b.lat.to_radians());
    let dp = p2 - p1;
    let dl = (b.lon - a.lon).to_radians();
    let h = (dp / 2.0).sin().powi(2) + p1.cos() * p2.cos() * (dl / 2.0).sin().powi(2);
    Ok(2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin())
}

/// 1 within 50 km, then exp(-(d-50)/50).
pub fn location_score_km(d: f64) -> f64 {
    if d <= LOCATION_RADIUS_KM {
        1.0
    } else {
        (-(d - LOCATION_RADIUS_KM) / LOCATION_DECAY_KM).exp()
    }
}

pub fn location_score(home: GeoPoint, job: GeoPoint) -> Result<f64, RecommendError> {
    Ok(location_score_km(haversine_km(home, job)?))
}

pub fn age_days(posted_at: DateTime<Utc>, now: DateTime<Utc>) -> Result<f64, RecommendError> {
    if posted_at > now {
        return Err(RecommendError::FuturePostDate { posted_at, now });
    }
    Ok((now - posted_at).num_milliseconds() as f64 / 86_400_000.0)
}

/// 2^(-age/7 days).
pub fn recency_score(posted_at: DateTime<Utc>, now: DateTime<Utc>) -> Result<f64, RecommendError> {
    Ok((-age_days(posted_at, now)? / RECENCY_HALF_LIFE_DAYS).exp2())
}

pub fn salary_score(profile: &CandidateProfile, job: &JobPosting) -> f64 {
    match profile.desired_salary_min {
        None => 1.0,
        Some(want) if job.salary_max >= want => 1.0,
        Some(want) => (job.salary_max / want).clamp(0.0, 1.0),
    }
}

pub fn check_eligibility(profile: &CandidateProfile, job: &JobPosting) -> bool {
    profile.education_level >= job.min_education
        && profile.age >= job.age_range.0
        && profile.age <= job.age_range.1
        && (profile.citizen || !job.citizenship_required)
}

/// Cosine in [-1, 1] mapped to [0, 1].
pub fn semantic_score(cosine: f64) -> f64 {
    ((cosine + 1.0) / 2.0).clamp(0.0, 1.0)
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}
