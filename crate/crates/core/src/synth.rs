//! Seeded synthetic corpora for tests, benchmarks and the demo.
//!
//! Nothing here is real data. Job postings use Punjab district towns and the
//! bundled skill ids so they look plausible in the console and CLI.

use std::collections::{BTreeSet, HashSet};

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::embedding::{EmbeddingVector, EMBEDDING_DIM};
use crate::ingestion::{DocKind, SourceDocument};
use crate::recommender::{haversine_km, CandidateProfile, EducationLevel, GeoPoint, JobLocation, JobPosting, Preferences};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit(v: Vec<f32>) -> EmbeddingVector {
    let n = v.iter().map(|x| (*x as f64).powi(2)).sum::<f64>().sqrt();
    EmbeddingVector::new(v.into_iter().map(|x| (x as f64 / n) as f32).collect()).expect("384 dims")
}

fn gaussian(rng: &mut ChaCha8Rng, scale: f64) -> Vec<f32> {
    (0..EMBEDDING_DIM)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            (z * scale) as f32
        })
        .collect::<Vec<f32>>()
}

/// Uniform on the unit sphere.
pub fn isotropic_vectors(n: usize, seed: u64) -> Vec<EmbeddingVector> {
    let mut r = rng(seed);
    (0..n).map(|_| unit(gaussian(&mut r, 1.0))).collect()
}

/// Unit vectors scattered around `centers` random centres. Noise per
/// coordinate has the same scale as the centres' spread.
pub fn clustered_vectors(n: usize, centers: usize, seed: u64) -> Vec<EmbeddingVector> {
    let mut r = rng(seed);
    let cs: Vec<Vec<f32>> = (0..centers.max(1)).map(|_| gaussian(&mut r, 1.0)).collect();
    (0..n)
        .map(|_| {
            let c = cs.choose(&mut r).unwrap();
            let noise = gaussian(&mut r, 1.0);
            unit(c.iter().zip(noise).map(|(a, b)| a + b).collect())
        })
        .collect()
}

pub const TOWNS: [(&str, f64, f64); 20] = [
    ("Chandigarh", 30.7333, 76.7794),
    ("Ludhiana", 30.9010, 75.8573),
    ("Amritsar", 31.6340, 74.8723),
    ("Jalandhar", 31.3260, 75.5762),
    ("Patiala", 30.3398, 76.3869),
    ("Bathinda", 30.2110, 74.9455),
    ("Mohali", 30.7046, 76.7179),
    ("Pathankot", 32.2643, 75.6421),
    ("Hoshiarpur", 31.5143, 75.9115),
    ("Firozpur", 30.9331, 74.6225),
    ("Moga", 30.8165, 75.1717),
    ("Sangrur", 30.2458, 75.8421),
    ("Kapurthala", 31.3800, 75.3800),
    ("Faridkot", 30.6769, 74.7583),
    ("Gurdaspur", 32.0417, 75.4053),
    ("Rupnagar", 30.9664, 76.5331),
    ("Barnala", 30.3745, 75.5487),
    ("Fazilka", 30.4036, 74.0280),
    ("Mansa", 29.9988, 75.3933),
    ("Delhi", 28.6139, 77.2090),
];

pub struct Category {
    pub name: &'static str,
    pub titles: &'static [&'static str],
    pub skills: &'static [&'static str],
    pub departments: &'static [&'static str],
}

pub const CATEGORIES: [Category; 8] = [
    Category {
        name: "IT",
        titles: &["Software Developer", "Data Entry Operator", "System Administrator", "Web Developer", "Data Analyst"],
        skills: &["python", "java", "sql", "javascript", "react", "linux", "git", "excel", "data_analysis", "networking", "django", "mysql"],
        departments: &["Punjab Infotech", "Private Sector", "e-Governance Society"],
    },
    Category {
        name: "Healthcare",
        titles: &["Staff Nurse", "Pharmacist", "Lab Technician", "Ward Attendant", "Medical Records Clerk"],
        skills: &["nursing", "first_aid", "pharmacy", "lab_technician", "phlebotomy", "medical_coding", "hospital_management", "patience", "empathy", "counselling"],
        departments: &["Health & Family Welfare", "Private Hospital", "National Health Mission"],
    },
    Category {
        name: "Education",
        titles: &["Primary Teacher", "Lecturer", "Computer Faculty", "Lab Assistant", "Counsellor"],
        skills: &["teaching", "lesson_planning", "curriculum_development", "classroom_management", "pstet", "ctet", "mathematics", "english", "punjabi", "communication"],
        departments: &["School Education", "Higher Education", "Private School"],
    },
    Category {
        name: "Banking",
        titles: &["Clerk", "Cashier", "Loan Officer", "Accounts Assistant", "Branch Associate"],
        skills: &["banking_operations", "cash_handling", "accounting", "tally", "gst", "excel", "customer_service", "financial_analysis", "auditing", "payroll"],
        departments: &["Cooperative Bank", "Private Bank", "Punjab Gramin Bank"],
    },
    Category {
        name: "Government Clerical",
        titles: &["Clerk", "Steno Typist", "Patwari", "Junior Assistant", "Data Entry Clerk"],
        skills: &["typing", "stenography", "computer_operations", "ms_office", "record_keeping", "drafting", "office_administration", "e_governance", "rti", "punjabi"],
        departments: &["Revenue", "Municipal Corporation", "District Administration"],
    },
    Category {
        name: "Engineering",
        titles: &["Junior Engineer", "Draftsman", "Lineman", "Site Supervisor", "Maintenance Technician"],
        skills: &["civil_engineering", "electrical_engineering", "autocad", "surveying", "estimation_and_costing", "construction_management", "electrician", "plc_programming", "hvac", "safety_management"],
        departments: &["PSPCL", "Public Works", "Water Supply & Sanitation"],
    },
    Category {
        name: "Agriculture",
        titles: &["Agriculture Development Officer", "Field Assistant", "Veterinary Inspector", "Horticulture Supervisor", "Dairy Technician"],
        skills: &["agriculture", "horticulture", "animal_husbandry", "food_processing", "food_safety", "rural_development", "community_outreach", "gis", "remote_sensing", "punjabi"],
        departments: &["Agriculture Dept", "Animal Husbandry", "Markfed"],
    },
    Category {
        name: "Logistics",
        titles: &["Driver", "Warehouse Assistant", "Delivery Executive", "Store Keeper", "Transport Supervisor"],
        skills: &["driving", "logistics", "inventory_management", "supply_chain_management", "procurement", "data_entry", "customer_service", "time_management", "teamwork", "safety_management"],
        departments: &["Transport", "Private Sector", "Food Civil Supplies"],
    },
];

pub fn reference_now() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2026, 3, 2, 9, 0, 0).unwrap()
}

fn display(skill: &str) -> String {
    skill.replace('_', " ")
}

fn jitter(r: &mut ChaCha8Rng, lat: f64, lon: f64, max_deg: f64) -> (f64, f64) {
    (lat + r.random_range(-max_deg..=max_deg), lon + r.random_range(-max_deg..=max_deg))
}

pub fn describe_job(title: &str, category: &str, department: &str, town: &str, skills: &BTreeSet<String>) -> String {
    let names: Vec<String> = skills.iter().map(|s| display(s)).collect();
    format!(
        "{title} vacancy in {category} with {department}, {town}. Candidates should know {}. Apply through the employment portal.",
        names.join(", ")
    )
}

struct JobSpec<'a> {
    id: String,
    cat: &'a Category,
    skills: BTreeSet<String>,
    town: (&'a str, f64, f64),
    jitter_deg: f64,
    age_days: f64,
    salary_max: f64,
    min_education: EducationLevel,
    age_range: (u32, u32),
    citizenship_required: bool,
}

fn posting(r: &mut ChaCha8Rng, spec: JobSpec<'_>, now: DateTime<Utc>) -> JobPosting {
    let cat = spec.cat;
    let title = *cat.titles.choose(r).unwrap();
    let department = *cat.departments.choose(r).unwrap();
    let (lat, lon) = jitter(r, spec.town.1, spec.town.2, spec.jitter_deg);
    JobPosting {
        description: describe_job(title, cat.name, department, spec.town.0, &spec.skills),
        job_id: spec.id,
        title: title.into(),
        category: cat.name.into(),
        department: department.into(),
        location: JobLocation {
            name: spec.town.0.into(),
            lat,
            lon,
        },
        salary_min: (spec.salary_max * 0.7).round(),
        salary_max: spec.salary_max,
        required_skills: spec.skills,
        min_education: spec.min_education,
        age_range: spec.age_range,
        citizenship_required: spec.citizenship_required,
        posted_at: now - Duration::minutes((spec.age_days * 1440.0) as i64),
    }
}

fn pick(r: &mut ChaCha8Rng, pool: &[&str], n: usize) -> BTreeSet<String> {
    let mut v: Vec<&str> = pool.to_vec();
    v.shuffle(r);
    v.into_iter().take(n).map(String::from).collect()
}

fn random_education(r: &mut ChaCha8Rng) -> EducationLevel {
    *EducationLevel::ALL.choose(r).unwrap()
}

/// Broad random posting; eligibility fields cover the whole range.
pub fn random_job(r: &mut ChaCha8Rng, id: String, now: DateTime<Utc>) -> JobPosting {
    let cat = CATEGORIES.choose(r).unwrap();
    let n = r.random_range(2..=5);
    let skills = pick(r, cat.skills, n);
    let town = *TOWNS.choose(r).unwrap();
    let lo = r.random_range(16..=30);
    let hi = lo + r.random_range(0..=25);
    let age = r.random_range(0.0..60.0);
    let salary = (r.random_range(12_000..=90_000) / 500 * 500) as f64;
    let edu = random_education(r);
    let citizen = r.random_bool(0.5);
    let spec = JobSpec {
        id,
        cat,
        skills,
        town,
        jitter_deg: 0.3,
        age_days: age,
        salary_max: salary,
        min_education: edu,
        age_range: (lo, hi),
        citizenship_required: citizen,
    };
    posting(r, spec, now)
}

pub fn random_jobs(n: usize, seed: u64, now: DateTime<Utc>) -> Vec<JobPosting> {
    let mut r = rng(seed);
    (0..n).map(|i| random_job(&mut r, format!("job-{i:06}"), now)).collect()
}

pub fn profile_text(skills: &BTreeSet<String>, category: &str, town: &str, edu: EducationLevel) -> String {
    let names: Vec<String> = skills.iter().map(|s| display(s)).collect();
    format!(
        "Job seeker in {town} with {} education looking for {category} work. Skills: {}.",
        edu.as_str().replace('_', " "),
        names.join(", ")
    )
}

pub fn random_profile(r: &mut ChaCha8Rng, id: String) -> CandidateProfile {
    let cat = CATEGORIES.choose(r).unwrap();
    let n = r.random_range(0..=6);
    let skills = pick(r, cat.skills, n);
    let town = *TOWNS.choose(r).unwrap();
    let edu = random_education(r);
    CandidateProfile {
        profile_text: profile_text(&skills, cat.name, town.0, edu),
        user_id: id,
        skills,
        education_level: edu,
        age: r.random_range(15..=60),
        citizen: r.random_bool(0.7),
        home: GeoPoint::new(town.1, town.2),
        desired_salary_min: r.random_bool(0.5).then(|| r.random_range(10_000..=80_000) as f64),
        preferences: Preferences::default(),
    }
}

/// One profile with a 200-job corpus in which exactly 20 postings are planted
/// matches: shared skills, same town, posted within five days, eligible and
/// paying enough. The rest are ineligible lookalikes, near misses that are
/// stale or over 100 km away, same-field postings with little skill overlap,
/// and other fields.
#[derive(Debug, Clone)]
pub struct PlantedCorpus {
    pub profile: CandidateProfile,
    pub jobs: Vec<JobPosting>,
    pub relevant: HashSet<String>,
}

pub const PLANTED_JOBS: usize = 200;
pub const PLANTED_MATCHES: usize = 20;

pub fn planted_corpus(index: usize, seed: u64, now: DateTime<Utc>) -> PlantedCorpus {
    let mut r = rng(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let ci = index % CATEGORIES.len();
    let cat = &CATEGORIES[ci];
    let town = TOWNS[r.random_range(0..TOWNS.len() - 1)];
    let skills = pick(&mut r, cat.skills, 6);
    let skill_list: Vec<&str> = skills.iter().map(String::as_str).collect();
    let edu = EducationLevel::Bachelor;
    let desired = r.random_range(20_000..=35_000) as f64;
    let profile = CandidateProfile {
        user_id: format!("user-{index:02}"),
        profile_text: profile_text(&skills, cat.name, town.0, edu),
        skills: skills.clone(),
        education_level: edu,
        age: r.random_range(21..=32),
        citizen: true,
        home: GeoPoint::new(town.1, town.2),
        desired_salary_min: Some(desired),
        preferences: Preferences {
            categories: vec![cat.name.into()],
            job_types: vec![],
        },
    };
    let age = profile.age;
    let mut jobs = Vec::with_capacity(PLANTED_JOBS);
    let mut relevant = HashSet::new();
    let mut next = 0usize;
    let mut id = |r: &mut ChaCha8Rng| {
        next += 1;
        format!("p{index:02}-{:04}-{}", next, r.random_range(0..10_000))
    };

    for _ in 0..PLANTED_MATCHES {
        let n = r.random_range(3..=5);
        let mut s = pick(&mut r, &skill_list, n);
        if r.random_bool(0.3) {
            s.extend(pick(&mut r, cat.skills, 1));
        }
        let spec = JobSpec {
            id: id(&mut r),
            cat,
            skills: s,
            town,
            jitter_deg: 0.15,
            age_days: r.random_range(0.0..5.0),
            salary_max: desired + r.random_range(0..=15_000) as f64,
            min_education: *[EducationLevel::HigherSecondary, EducationLevel::Bachelor].choose(&mut r).unwrap(),
            age_range: (18, age + r.random_range(3..=10)),
            citizenship_required: r.random_bool(0.5),
        };
        let j = posting(&mut r, spec, now);
        relevant.insert(j.job_id.clone());
        jobs.push(j);
    }
    // Lookalikes the profile is not eligible for.
    for k in 0..40 {
        let n = r.random_range(3..=5);
        let (min_education, age_range) = match k % 2 {
            0 => (EducationLevel::Master, (18, 45)),
            _ => (EducationLevel::Bachelor, (age + 1, age + 15)),
        };
        let spec = JobSpec {
            id: id(&mut r),
            cat,
            skills: pick(&mut r, &skill_list, n),
            town,
            jitter_deg: 0.15,
            age_days: r.random_range(0.0..5.0),
            salary_max: desired + 5_000.0,
            min_education,
            age_range,
            citizenship_required: false,
        };
        jobs.push(posting(&mut r, spec, now));
    }
    // Near misses: eligible with the same skills, but stale or distant.
    let far_towns: Vec<(&str, f64, f64)> = TOWNS
        .iter()
        .copied()
        .filter(|t| haversine_km(GeoPoint::new(t.1, t.2), GeoPoint::new(town.1, town.2)).unwrap_or(0.0) > 100.0)
        .collect();
    for k in 0..30 {
        let n = r.random_range(3..=5);
        let s = pick(&mut r, &skill_list, n);
        let (t, age_days) = match k % 2 {
            0 => (town, r.random_range(14.0..40.0)),
            _ => (*far_towns.choose(&mut r).unwrap_or(&TOWNS[19]), r.random_range(0.0..5.0)),
        };
        let spec = JobSpec {
            id: id(&mut r),
            cat,
            skills: s,
            town: t,
            jitter_deg: 0.15,
            age_days,
            salary_max: desired + 5_000.0,
            min_education: EducationLevel::Secondary,
            age_range: (18, 45),
            citizenship_required: false,
        };
        jobs.push(posting(&mut r, spec, now));
    }
    // Same field, little skill overlap, elsewhere, older.
    for _ in 0..30 {
        let n = r.random_range(2..=4);
        let mut s = pick(&mut r, cat.skills, n);
        s.retain(|x| !skills.contains(x) || r.random_bool(0.2));
        if s.is_empty() {
            s.insert(cat.skills[r.random_range(0..cat.skills.len())].to_string());
        }
        let spec = JobSpec {
            id: id(&mut r),
            cat,
            skills: s,
            town: TOWNS[r.random_range(0..TOWNS.len())],
            jitter_deg: 0.3,
            age_days: r.random_range(10.0..60.0),
            salary_max: r.random_range(12_000..=60_000) as f64,
            min_education: EducationLevel::Secondary,
            age_range: (18, 40),
            citizenship_required: false,
        };
        jobs.push(posting(&mut r, spec, now));
    }
    while jobs.len() < PLANTED_JOBS {
        let other = loop {
            let c = r.random_range(0..CATEGORIES.len());
            if c != ci {
                break &CATEGORIES[c];
            }
        };
        let n = r.random_range(2..=5);
        let spec = JobSpec {
            id: id(&mut r),
            cat: other,
            skills: pick(&mut r, other.skills, n),
            town: TOWNS[r.random_range(0..TOWNS.len())],
            jitter_deg: 0.3,
            age_days: r.random_range(0.0..60.0),
            salary_max: r.random_range(12_000..=80_000) as f64,
            min_education: EducationLevel::Secondary,
            age_range: (18, 40),
            citizenship_required: false,
        };
        jobs.push(posting(&mut r, spec, now));
    }
    jobs.shuffle(&mut r);
    PlantedCorpus { profile, jobs, relevant }
}

const WORDS: [&str; 48] = [
    "recruitment", "notice", "posts", "eligible", "candidates", "apply", "online", "last", "date", "fee",
    "district", "department", "punjab", "government", "vacancy", "clerk", "teacher", "constable", "exam",
    "syllabus", "result", "merit", "list", "interview", "salary", "pay", "scale", "age", "limit",
    "relaxation", "category", "reserved", "general", "qualification", "graduate", "diploma", "certificate",
    "document", "verification", "schedule", "centre", "admit", "card", "released", "official", "website",
    "scheme", "training",
];

/// Text of exactly `tokens` whitespace-separated words.
pub fn random_text(r: &mut ChaCha8Rng, tokens: usize) -> String {
    let mut out = String::with_capacity(tokens * 8);
    for i in 0..tokens {
        if i > 0 {
            out.push(if r.random_bool(0.05) { '\n' } else { ' ' });
        }
        out.push_str(WORDS.choose(r).unwrap());
        if r.random_bool(0.02) {
            out.push_str(&r.random_range(1..2030).to_string());
        }
    }
    out
}

pub fn random_document(r: &mut ChaCha8Rng, doc_id: String, tokens: usize, now: DateTime<Utc>) -> SourceDocument {
    let kind = *[DocKind::JobListing, DocKind::Alert, DocKind::Result, DocKind::PolicyDoc]
        .choose(r)
        .unwrap();
    let origin = format!("synthetic://{doc_id}");
    SourceDocument::new(doc_id, kind, random_text(r, tokens), now, origin)
}
