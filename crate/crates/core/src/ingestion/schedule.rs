use std::collections::BTreeMap;

use chrono::{DateTime, Datelike, Duration, FixedOffset, NaiveTime, TimeZone, Timelike, Utc};
use serde::{Deserialize, Serialize};

use super::IngestError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cadence {
    /// Every day at 09:00 local.
    #[serde(rename = "daily_0900")]
    Daily0900,
    /// Top of every hour.
    Hourly,
    /// 00:00, 06:00, 12:00, 18:00 local.
    FourPerDay,
    /// Mondays at 09:00 local.
    Weekly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduledTask {
    pub name: String,
    pub cadence: Cadence,
    /// Fetcher-specific locator; the fixture fetcher treats it as a
    /// subdirectory, empty meaning the root.
    #[serde(default)]
    pub source: String,
    #[serde(default)]
    pub last_run: Option<DateTime<Utc>>,
}

impl ScheduledTask {
    pub fn new(name: impl Into<String>, cadence: Cadence) -> Self {
        let name = name.into();
        Self {
            source: name.clone(),
            name,
            cadence,
            last_run: None,
        }
    }
}

/// Next firing time strictly after `now`, evaluated in the local `offset`.
pub fn next_run(cadence: Cadence, now: DateTime<Utc>, offset: FixedOffset) -> DateTime<Utc> {
    let local = now.with_timezone(&offset).naive_local();
    let nine = NaiveTime::from_hms_opt(9, 0, 0).expect("valid time");
    let next = match cadence {
        Cadence::Daily0900 => {
            let today = local.date().and_time(nine);
            if today > local {
                today
            } else {
                today + Duration::days(1)
            }
        }
        Cadence::Hourly => {
            local.date().and_hms_opt(local.hour(), 0, 0).expect("valid hour") + Duration::hours(1)
        }
        Cadence::FourPerDay => {
            let slot = local.hour() / 6 * 6;
            local.date().and_hms_opt(slot, 0, 0).expect("valid hour") + Duration::hours(6)
        }
        Cadence::Weekly => {
            let back = local.weekday().num_days_from_monday() as i64;
            let monday = (local.date() - Duration::days(back)).and_time(nine);
            if monday > local {
                monday
            } else {
                monday + Duration::days(7)
            }
        }
    };
    offset
        .from_local_datetime(&next)
        .single()
        .expect("fixed offsets are unambiguous")
        .with_timezone(&Utc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchedulerConfig {
    Full {
        utc_offset_minutes: i32,
        tasks: BTreeMap<String, Cadence>,
    },
    /// Bare `task name -> cadence` map, local time = IST.
    Tasks(BTreeMap<String, Cadence>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scheduler {
    pub utc_offset_minutes: i32,
    pub tasks: Vec<ScheduledTask>,
}

/// Punjab local time, UTC+05:30.
pub const IST_OFFSET_MINUTES: i32 = 330;

impl Default for Scheduler {
    fn default() -> Self {
        Self {
            utc_offset_minutes: IST_OFFSET_MINUTES,
            tasks: vec![
                ScheduledTask::new("job_listings", Cadence::Daily0900),
                ScheduledTask::new("alerts", Cadence::Hourly),
                ScheduledTask::new("results", Cadence::FourPerDay),
                ScheduledTask::new("infographics", Cadence::Weekly),
            ],
        }
    }
}

impl Scheduler {
    pub fn new(utc_offset_minutes: i32, tasks: Vec<ScheduledTask>) -> Result<Self, IngestError> {
        FixedOffset::east_opt(utc_offset_minutes * 60)
            .ok_or_else(|| IngestError::Config(format!("bad utc offset {utc_offset_minutes}")))?;
        Ok(Self {
            utc_offset_minutes,
            tasks,
        })
    }

    /// One task over the fetcher root, never run before.
    pub fn single(name: &str, cadence: Cadence) -> Self {
        let mut task = ScheduledTask::new(name, cadence);
        task.source.clear();
        Self {
            utc_offset_minutes: IST_OFFSET_MINUTES,
            tasks: vec![task],
        }
    }

    pub fn from_json(text: &str) -> Result<Self, IngestError> {
        let cfg: SchedulerConfig =
            serde_json::from_str(text).map_err(|e| IngestError::Config(e.to_string()))?;
        let (offset, tasks) = match cfg {
            SchedulerConfig::Full {
                utc_offset_minutes,
                tasks,
            } => (utc_offset_minutes, tasks),
            SchedulerConfig::Tasks(tasks) => (IST_OFFSET_MINUTES, tasks),
        };
        if tasks.is_empty() {
            return Err(IngestError::Config("no tasks configured".into()));
        }
        Self::new(
            offset,
            tasks.into_iter().map(|(n, c)| ScheduledTask::new(n, c)).collect(),
        )
    }

    pub fn offset(&self) -> FixedOffset {
        FixedOffset::east_opt(self.utc_offset_minutes * 60).expect("validated offset")
    }

    pub fn next_run(&self, task: &ScheduledTask, now: DateTime<Utc>) -> DateTime<Utc> {
        next_run(task.cadence, now, self.offset())
    }

    /// A task is due if it never ran or its next slot after the last run has
    /// arrived.
    pub fn is_due(&self, task: &ScheduledTask, now: DateTime<Utc>) -> bool {
        match task.last_run {
            None => true,
            Some(last) => self.next_run(task, last) <= now,
        }
    }

    pub fn due_indices(&self, now: DateTime<Utc>) -> Vec<usize> {
        (0..self.tasks.len()).filter(|&i| self.is_due(&self.tasks[i], now)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn utc() -> FixedOffset {
        FixedOffset::east_opt(0).unwrap()
    }

    fn at(h: u32, m: u32, s: u32) -> DateTime<Utc> {
        // 2026-01-07 is a Wednesday.
        Utc.with_ymd_and_hms(2026, 1, 7, h, m, s).unwrap()
    }

    #[test]
    fn daily_before_nine_fires_same_day() {
        assert_eq!(next_run(Cadence::Daily0900, at(8, 0, 0), utc()), at(9, 0, 0));
    }

    #[test]
    fn daily_exactly_nine_fires_next_day() {
        assert_eq!(
            next_run(Cadence::Daily0900, at(9, 0, 0), utc()),
            at(9, 0, 0) + Duration::days(1)
        );
    }

    #[test]
    fn four_per_day_slots() {
        assert_eq!(next_run(Cadence::FourPerDay, at(5, 59, 0), utc()), at(6, 0, 0));
        assert_eq!(next_run(Cadence::FourPerDay, at(6, 0, 0), utc()), at(12, 0, 0));
        assert_eq!(
            next_run(Cadence::FourPerDay, at(18, 30, 0), utc()),
            at(0, 0, 0) + Duration::days(1)
        );
    }

    #[test]
    fn hourly_is_strictly_after() {
        assert_eq!(next_run(Cadence::Hourly, at(10, 0, 0), utc()), at(11, 0, 0));
        assert_eq!(next_run(Cadence::Hourly, at(10, 59, 59), utc()), at(11, 0, 0));
    }

    #[test]
    fn weekly_targets_monday_nine() {
        let monday = Utc.with_ymd_and_hms(2026, 1, 12, 9, 0, 0).unwrap();
        assert_eq!(next_run(Cadence::Weekly, at(12, 0, 0), utc()), monday);
        assert_eq!(next_run(Cadence::Weekly, monday, utc()), monday + Duration::days(7));
    }

    #[test]
    fn local_offset_is_respected() {
        // 08:00 IST = 02:30 UTC; next 09:00 IST = 03:30 UTC.
        let ist = FixedOffset::east_opt(330 * 60).unwrap();
        let now = Utc.with_ymd_and_hms(2026, 1, 7, 2, 30, 0).unwrap();
        assert_eq!(
            next_run(Cadence::Daily0900, now, ist),
            Utc.with_ymd_and_hms(2026, 1, 7, 3, 30, 0).unwrap()
        );
    }

    #[test]
    fn config_accepts_bare_map_and_full_form() {
        let s = Scheduler::from_json(r#"{"alerts":"hourly","job_listings":"daily_0900"}"#).unwrap();
        assert_eq!(s.tasks.len(), 2);
        assert_eq!(s.utc_offset_minutes, IST_OFFSET_MINUTES);
        let s = Scheduler::from_json(r#"{"utc_offset_minutes":0,"tasks":{"results":"four_per_day"}}"#).unwrap();
        assert_eq!(s.tasks[0].cadence, Cadence::FourPerDay);
        assert!(Scheduler::from_json(r#"{"x":"sometimes"}"#).is_err());
        assert!(Scheduler::from_json("{}").is_err());
    }

    #[test]
    fn due_logic() {
        let mut s = Scheduler::new(0, vec![ScheduledTask::new("alerts", Cadence::Hourly)]).unwrap();
        assert!(s.is_due(&s.tasks[0], at(10, 15, 0)));
        s.tasks[0].last_run = Some(at(10, 15, 0));
        assert!(!s.is_due(&s.tasks[0], at(10, 59, 0)));
        assert!(s.is_due(&s.tasks[0], at(11, 0, 0)));
    }
}
