//! HS256 session tokens, password hashing and the logout blacklist.

use std::collections::HashMap;
use std::sync::Arc;

use argon2::password_hash::{PasswordHash, PasswordHasher, PasswordVerifier, SaltString};
use argon2::Argon2;
use chrono::{DateTime, Duration, TimeZone, Utc};
use jsonwebtoken::{decode, encode, Algorithm, DecodingKey, EncodingKey, Header, Validation};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use jobsphere_core::clock::Clock;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub sub: String,
    pub iat: i64,
    pub exp: i64,
    pub jti: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum TokenError {
    #[error("malformed or badly signed token")]
    Invalid,
    #[error("token expired")]
    Expired,
    #[error("token revoked")]
    Revoked,
}

/// Revoked token ids with their natural expiry, so entries can be dropped
/// once the token would have died anyway.
#[derive(Debug, Default)]
pub struct Blacklist {
    entries: Mutex<HashMap<String, i64>>,
}

impl Blacklist {
    pub fn insert(&self, jti: &str, exp: i64) {
        self.entries.lock().insert(jti.to_string(), exp);
    }

    pub fn contains(&self, jti: &str) -> bool {
        self.entries.lock().contains_key(jti)
    }

    pub fn purge(&self, now: DateTime<Utc>) -> usize {
        let mut e = self.entries.lock();
        let before = e.len();
        e.retain(|_, exp| *exp >= now.timestamp());
        before - e.len()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub struct TokenService {
    encoding: EncodingKey,
    decoding: DecodingKey,
    ttl: Duration,
    clock: Arc<dyn Clock>,
    pub blacklist: Blacklist,
}

impl TokenService {
    pub fn new(secret: &str, ttl: Duration, clock: Arc<dyn Clock>) -> Self {
        Self {
            encoding: EncodingKey::from_secret(secret.as_bytes()),
            decoding: DecodingKey::from_secret(secret.as_bytes()),
            ttl,
            clock,
            blacklist: Blacklist::default(),
        }
    }

    pub fn issue(&self, subject: &str) -> (String, Claims) {
        let now = self.clock.now();
        let claims = Claims {
            sub: subject.to_string(),
            iat: now.timestamp(),
            exp: (now + self.ttl).timestamp(),
            jti: uuid::Uuid::new_v4().to_string(),
        };
        let token = encode(&Header::new(Algorithm::HS256), &claims, &self.encoding).expect("HS256 encoding cannot fail");
        (token, claims)
    }

    /// Signature, expiry against the injected clock, then the blacklist.
    pub fn verify(&self, token: &str) -> Result<Claims, TokenError> {
        let mut v = Validation::new(Algorithm::HS256);
        v.validate_exp = false;
        v.required_spec_claims.clear();
        let data = decode::<Claims>(token, &self.decoding, &v).map_err(|_| TokenError::Invalid)?;
        let c = data.claims;
        if self.clock.now().timestamp() > c.exp {
            return Err(TokenError::Expired);
        }
        if self.blacklist.contains(&c.jti) {
            return Err(TokenError::Revoked);
        }
        Ok(c)
    }

    pub fn expires_at(claims: &Claims) -> DateTime<Utc> {
        Utc.timestamp_opt(claims.exp, 0).single().unwrap_or_default()
    }
}

pub fn hash_password(password: &str) -> String {
    let salt = SaltString::encode_b64(uuid::Uuid::new_v4().as_bytes()).expect("16-byte salt");
    Argon2::default()
        .hash_password(password.as_bytes(), &salt)
        .expect("argon2 with default params")
        .to_string()
}

pub fn verify_password(password: &str, hash: &str) -> bool {
    PasswordHash::new(hash).is_ok_and(|h| Argon2::default().verify_password(password.as_bytes(), &h).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use jobsphere_core::clock::SimulatedClock;

    fn service() -> (Arc<SimulatedClock>, TokenService) {
        let clock = Arc::new(SimulatedClock::at_epoch());
        let s = TokenService::new("k", Duration::hours(24), clock.clone());
        (clock, s)
    }

    #[test]
    fn expiry_is_inclusive_of_the_last_second() {
        let (clock, s) = service();
        let (t, _) = s.issue("u");
        clock.advance(Duration::hours(24));
        assert!(s.verify(&t).is_ok());
        clock.advance(Duration::seconds(1));
        assert_eq!(s.verify(&t), Err(TokenError::Expired));
    }

    #[test]
    fn wrong_secret_and_garbage_are_invalid() {
        let (clock, s) = service();
        let (t, _) = s.issue("u");
        let other = TokenService::new("other", Duration::hours(24), clock);
        assert_eq!(other.verify(&t), Err(TokenError::Invalid));
        assert_eq!(s.verify("a.b.c"), Err(TokenError::Invalid));
    }

    #[test]
    fn blacklisted_token_is_revoked() {
        let (_, s) = service();
        let (t, c) = s.issue("u");
        s.blacklist.insert(&c.jti, c.exp);
        assert_eq!(s.verify(&t), Err(TokenError::Revoked));
    }

    #[test]
    fn password_round_trip() {
        let h = hash_password("hunter22");
        assert!(!h.contains("hunter22"));
        assert!(verify_password("hunter22", &h));
        assert!(!verify_password("hunter23", &h));
    }
}
