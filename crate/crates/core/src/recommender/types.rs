use std::collections::BTreeSet;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::RecommendError;

/// Ordinal education level; comparisons follow declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EducationLevel {
    #[default]
    None,
    Secondary,
    HigherSecondary,
    Diploma,
    Bachelor,
    Master,
    Doctorate,
}

impl EducationLevel {
    pub const ALL: [EducationLevel; 7] = [
        EducationLevel::None,
        EducationLevel::Secondary,
        EducationLevel::HigherSecondary,
        EducationLevel::Diploma,
        EducationLevel::Bachelor,
        EducationLevel::Master,
        EducationLevel::Doctorate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EducationLevel::None => "none",
            EducationLevel::Secondary => "secondary",
            EducationLevel::HigherSecondary => "higher_secondary",
            EducationLevel::Diploma => "diploma",
            EducationLevel::Bachelor => "bachelor",
            EducationLevel::Master => "master",
            EducationLevel::Doctorate => "doctorate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Self {
        Self { lat, lon }
    }

    pub fn validate(&self) -> Result<(), RecommendError> {
        let ok = self.lat.is_finite()
            && self.lon.is_finite()
            && (-90.0..=90.0).contains(&self.lat)
            && (-180.0..=180.0).contains(&self.lon);
        if ok {
            Ok(())
        } else {
            Err(RecommendError::InvalidCoordinate {
                lat: self.lat,
                lon: self.lon,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobLocation {
    pub name: String,
    pub lat: f64,
    pub lon: f64,
}

impl JobLocation {
    pub fn point(&self) -> GeoPoint {
        GeoPoint::new(self.lat, self.lon)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobPosting {
    pub job_id: String,
    pub title: String,
    pub description: String,
    pub category: String,
    pub department: String,
    pub location: JobLocation,
    pub salary_min: f64,
    pub salary_max: f64,
    pub required_skills: BTreeSet<String>,
    pub min_education: EducationLevel,
    pub age_range: (u32, u32),
    pub citizenship_required: bool,
    pub posted_at: DateTime<Utc>,
}

impl JobPosting {
    pub fn validate(&self) -> Result<(), RecommendError> {
        let bad = |why: &str| Err(RecommendError::InvalidJob {
            job_id: self.job_id.clone(),
            reason: why.to_string(),
        });
        if self.job_id.trim().is_empty() {
            return bad("empty job_id");
        }
        if self.description.trim().is_empty() {
            return bad("empty description");
        }
        if !(self.salary_min.is_finite() && self.salary_max.is_finite()) || self.salary_min > self.salary_max {
            return bad("salary_min exceeds salary_max");
        }
        if self.age_range.0 > self.age_range.1 {
            return bad("age range min exceeds max");
        }
        self.location.point().validate()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Preferences {
    #[serde(default)]
    pub categories: Vec<String>,
    #[serde(default)]
    pub job_types: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateProfile {
    pub user_id: String,
    #[serde(default)]
    pub skills: BTreeSet<String>,
    #[serde(default)]
    pub education_level: EducationLevel,
    pub age: u32,
    pub citizen: bool,
    pub home: GeoPoint,
    #[serde(default)]
    pub desired_salary_min: Option<f64>,
    #[serde(default)]
    pub preferences: Preferences,
    pub profile_text: String,
}

impl CandidateProfile {
    pub fn validate(&self) -> Result<(), RecommendError> {
        if self.profile_text.trim().is_empty() {
            return Err(RecommendError::InvalidProfile("profile_text is empty".into()));
        }
        if let Some(s) = self.desired_salary_min {
            if !s.is_finite() || s < 0.0 {
                return Err(RecommendError::InvalidProfile("desired_salary_min must be a nonnegative number".into()));
            }
        }
        self.home.validate()
    }
}

/// Per-result breakdown shown to the user.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Explanation {
    pub matched_skills: Vec<String>,
    pub missing_skills: Vec<String>,
    pub distance_km: f64,
    pub age_days: f64,
    pub summary: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredJob {
    pub job_id: String,
    pub s_sem: f64,
    pub s_skill: f64,
    pub s_loc: f64,
    pub s_sal: f64,
    pub s_rec: f64,
    pub eligible: bool,
    pub relevance: f64,
    pub p_apply: f64,
    pub category: String,
    pub location_name: String,
    pub department: String,
    pub explanation: Explanation,
}

impl ScoredJob {
    /// [s_sem, s_skill, s_loc, s_sal, s_rec]
    pub fn components(&self) -> [f64; 5] {
        [self.s_sem, self.s_skill, self.s_loc, self.s_sal, self.s_rec]
    }
}

/// Logistic coefficients over the five components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Beta {
    pub bias: f64,
    pub sem: f64,
    pub skill: f64,
    pub loc: f64,
    pub sal: f64,
    pub rec: f64,
}

impl Beta {
    /// [bias, sem, skill, loc, sal, rec]
    pub fn to_array(self) -> [f64; 6] {
        [self.bias, self.sem, self.skill, self.loc, self.sal, self.rec]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Self {
            bias: a[0],
            sem: a[1],
            skill: a[2],
            loc: a[3],
            sal: a[4],
            rec: a[5],
        }
    }
}

const BUNDLED_WEIGHTS: &str = include_str!("../../data/rank_weights.json");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankWeights {
    pub w_sem: f64,
    pub w_skill: f64,
    pub w_loc: f64,
    pub w_sal: f64,
    pub w_rec: f64,
    pub lambda_div: f64,
    pub beta: Beta,
}

impl Default for RankWeights {
    /// The bundled configuration.
    fn default() -> Self {
        serde_json::from_str(BUNDLED_WEIGHTS).expect("bundled rank weights parse")
    }
}

impl RankWeights {
    pub fn from_json(text: &str) -> Result<Self, RecommendError> {
        let w: Self = serde_json::from_str(text).map_err(|e| RecommendError::Config(e.to_string()))?;
        w.validate()?;
        Ok(w)
    }

    pub fn components(&self) -> [f64; 5] {
        [self.w_sem, self.w_skill, self.w_loc, self.w_sal, self.w_rec]
    }

    pub fn validate(&self) -> Result<(), RecommendError> {
        let w = self.components();
        if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(RecommendError::Config("component weights must be nonnegative".into()));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(RecommendError::Config(format!("component weights sum to {sum}, expected 1")));
        }
        if !self.lambda_div.is_finite() || self.lambda_div < 0.0 {
            return Err(RecommendError::Config("lambda_div must be nonnegative".into()));
        }
        if self.beta.to_array().iter().any(|b| !b.is_finite()) {
            return Err(RecommendError::Config("beta must be finite".into()));
        }
        Ok(())
    }
}
