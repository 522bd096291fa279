use std::fmt::Write;

use crate::error::PackError;

const PORT_SORTS: &str = "\
# Port sorts used by the privacy vocabulary.
sort a;
sort p;
sort tp;
sort et;
sort sy;
sort d;
sort c;
sort sc;
sort t;
sort i;
";

const ROLE_SORTS: &str = "
# Sender and receiver roles, and their declared types.
sort sr = Cont {a -> (p + tp) × sy × (et + 1)}
        | Proc {a -> (p + tp) × sy × (et + 1)};
sort ent = SType {et -> (p + tp) × a × sy} sr
         | RType {et -> (p + tp) × a × sy} sr;
";

const SAFEGUARD_SORTS: &str = "
# Certification ingredients.
sort e = ExpiryDate;
sort g = Greater e;
sort s = SCCs;

# Adequacy decisions and location pointers.
sort ad = Adeq {d -> p × p*};
sort pnt = P {p -> (sy × a × (et + 1)) + d}
         | P' {tp -> (sy × a) + et}
         | Ps {tp -> (sy × a) + et};

# Certification schemes and certifications in their four states.
sort scm = Scheme {sc -> c × c*} cr × cr*;
sort certf = Cert {c -> sc} (cr + tcr)* × (e + g)
           | CompliantCert {c -> sc} (tcr × tcr*) × (e + g)
           | InvalidCert {c -> 1} (cr + tcr)* × (e + g)
           | WithdrawnCert {c -> 1};

# Contracts and their failure marker.
sort ctr = Contract {t -> t × t*} s + 1;
sort inctr = InvalidContract {i -> 1};

# Check outcomes and bookkeeping tokens.
sort outc = CheckReg | SameRegion | Adequate;
sort cd = CurrentDate;
sort chex = CheckExp cd;
sort wreq = WithdReq;

# Locations; named members pin the per-country content, the bare
# member admits any other country.
sort l = L(\"Ireland\") (pnt × pnt*) × (ad + scm + ctr)*
       | L(\"US\") pnt × pnt*
       | L(\"Mexico\") (pnt × pnt*) × (ctr + inctr)
       | L(\"Singapore\") (pnt × pnt*) × (ctr + inctr)*
       | L(\"Dubai\") (pnt × pnt*) × certf
       | L(\"China\") (pnt × pnt*) × certf*
       | L (pnt × pnt*) × (ad + scm + ctr + inctr + certf)*;
";

/// Renders the sorting discipline for the privacy vocabulary, expanded
/// over the given certification criteria domain.
///
/// The text parses with the sort-scheme grammar and covers exactly the
/// catalog controls; model files append their own sorts for the controls
/// they introduce and may reference the node sorts declared here.
pub fn sort_scheme_text(criteria: &[i64]) -> Result<String, PackError> {
    let mut criteria: Vec<i64> = criteria.to_vec();
    criteria.sort_unstable();
    criteria.dedup();
    if criteria.is_empty() {
        return Err(PackError::EmptyCriteriaDomain);
    }
    let members = |ctrl: &str| {
        criteria
            .iter()
            .map(|x| format!("{ctrl}({x})"))
            .collect::<Vec<_>>()
            .join(" | ")
    };

    let mut s = String::new();
    s.push_str(PORT_SORTS);
    s.push_str(ROLE_SORTS);
    writeln!(s, "\n# Certification criteria, plain and checked.").unwrap();
    writeln!(s, "sort cr = {};", members("C")).unwrap();
    writeln!(s, "sort tcr = {};", members("C'")).unwrap();
    s.push_str(SAFEGUARD_SORTS);
    Ok(s)
}
