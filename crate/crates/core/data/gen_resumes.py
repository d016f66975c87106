"""Generates the resume fixture corpus: resumes/rNN.txt plus rNN.json gold.

Gold labels are written from the structured records the text is rendered
from, never from parser output. Formats vary on purpose: header styles,
headerless layouts, contact layouts, date styles, skill spellings.
"""
import json
import os
import random

OUT = "resumes"
N = 50
SEED = 7

FIRST = ["Harpreet", "Gurpreet", "Simran", "Amandeep", "Rajveer", "Neha", "Ankit", "Pooja", "Manpreet", "Jaspreet",
         "Rohit", "Priya", "Karan", "Navneet", "Sukhdeep", "Ritika", "Vikram", "Baljit", "Komal", "Arjun",
         "Mandeep", "Sonia", "Deepak", "Kiranjot", "Ravinder"]
LAST = ["Kaur", "Singh", "Sharma", "Verma", "Gill", "Sandhu", "Bansal", "Garg", "Dhillon", "Sidhu", "Arora",
        "Chopra", "Mehta", "Brar", "Kumar"]
CITIES = ["Ludhiana", "Amritsar", "Patiala", "Jalandhar", "Mohali", "Bathinda", "Sangrur", "Hoshiarpur", "Moga",
          "Chandigarh"]
MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]
MONTHS_LONG = ["January", "February", "March", "April", "May", "June", "July", "August", "September", "October",
               "November", "December"]

UNIS = ["Punjabi University", "Guru Nanak Dev University", "Panjab University", "Lovely Professional University",
        "Thapar Institute of Engineering and Technology", "Punjab Engineering College",
        "Chandigarh University", "Guru Nanak Dev Engineering College", "DAV College", "Khalsa College",
        "Government Mohindra College", "Chitkara University"]
BOARDS = ["PSEB", "CBSE", "ICSE"]

DOMAINS = {
    "it": {
        "degrees": [("B.Tech", "B.Tech in Computer Science"), ("BCA", "BCA"), ("MCA", "MCA"),
                    ("B.E.", "B.E. (Information Technology)"), ("M.Tech", "M.Tech in Software Engineering")],
        "titles": ["Software Engineer", "Web Developer", "Data Analyst", "Junior Developer", "QA Engineer",
                   "Backend Developer", "Frontend Developer", "Data Engineer"],
        "companies": ["Infosys Ltd", "Tata Consultancy Services", "Wipro", "HCL Technologies", "Quark Software",
                      "Netsol Technologies", "SmartData Solutions Pvt Ltd", "IDS Infotech Ltd", "Zapbuild",
                      "Mindtree Limited"],
        "skills": ["python", "java", "javascript", "sql", "react", "nodejs", "django", "html", "css", "git",
                   "docker", "aws", "mysql", "mongodb", "machine_learning", "data_analysis", "power_bi", "excel",
                   "typescript", "angular", "rest_api", "linux", "pandas", "numpy", "tableau", "cpp", "csharp",
                   "spring_boot", "kubernetes", "selenium", "manual_testing", "deep_learning",
                   "natural_language_processing", "flask", "postgresql", "jira", "agile"],
        "bullets": ["Built REST APIs for internal tools", "Wrote unit tests and fixed defects",
                    "Prepared weekly dashboards for managers", "Migrated legacy reports to the cloud",
                    "Reviewed pull requests and mentored interns", "Automated data cleaning scripts"],
    },
    "clerical": {
        "degrees": [("B.A.", "B.A."), ("B.Com", "B.Com"), ("BBA", "BBA"), ("M.Com", "M.Com"), ("B.Sc", "B.Sc (Non-Medical)")],
        "titles": ["Clerk", "Data Entry Operator", "Office Assistant", "Computer Operator", "Junior Assistant",
                   "Steno Typist", "Accounts Assistant"],
        "companies": ["Punjab National Bank", "Municipal Corporation Ludhiana", "Department of Revenue Punjab",
                      "District Court Patiala", "Punjab State Power Corporation Limited", "Markfed Punjab",
                      "State Bank of India", "Tehsil Office Moga"],
        "skills": ["typing", "data_entry", "ms_office", "excel", "ms_word", "tally", "computer_operations",
                   "record_keeping", "drafting", "stenography", "ccc", "gst", "accounting", "office_administration",
                   "communication", "time_management", "punjabi", "hindi", "english", "e_governance"],
        "bullets": ["Maintained files and registers", "Handled 200+ data entries per day",
                    "Drafted letters and office notes", "Managed counter cash and receipts",
                    "Updated records on the e-office portal"],
    },
    "civil": {
        "degrees": [("B.Tech", "B.Tech (Civil Engineering)"), ("Diploma", "Diploma in Civil Engineering"),
                    ("M.Tech", "M.Tech Structural Engineering"), ("B.E.", "B.E. Civil")],
        "titles": ["Site Engineer", "Junior Engineer", "Civil Engineer", "Draftsman", "Surveyor",
                   "Quantity Surveyor"],
        "companies": ["Larsen & Toubro Limited", "Punjab Public Works Department", "Shapoorji Pallonji",
                      "GMADA", "Gillco Developers", "Omaxe Ltd", "Punjab Water Supply and Sewerage Board"],
        "skills": ["autocad", "staad_pro", "revit", "estimation_and_costing", "surveying", "ms_project",
                   "construction_management", "excel", "primavera", "structural_analysis", "teamwork",
                   "leadership", "civil_engineering"],
        "bullets": ["Supervised concrete and steel work", "Prepared bar bending schedules",
                    "Checked contractor bills", "Coordinated with architects on drawings"],
    },
    "health": {
        "degrees": [("B.Sc", "B.Sc Nursing"), ("Diploma", "Diploma in Pharmacy"), ("M.Sc", "M.Sc Nursing")],
        "titles": ["Staff Nurse", "Pharmacist", "Lab Technician", "Nursing Officer", "Ward Supervisor"],
        "companies": ["Rajindra Hospital", "Fortis Hospital", "Dayanand Medical College and Hospital",
                      "Civil Hospital Jalandhar", "Max Super Speciality Hospital", "PGIMER"],
        "skills": ["nursing", "first_aid", "pharmacy", "lab_technician", "phlebotomy", "hospital_management",
                   "communication", "empathy", "patience", "teamwork", "computer_operations", "english", "punjabi"],
        "bullets": ["Monitored vital signs of ward patients", "Dispensed medicines as per prescriptions",
                    "Assisted doctors in minor procedures", "Maintained patient records"],
    },
    "teaching": {
        "degrees": [("B.Ed", "B.Ed"), ("M.A.", "M.A. English"), ("M.Sc", "M.Sc Mathematics"), ("B.A.", "B.A.")],
        "titles": ["Teacher", "Lecturer", "Primary Teacher", "Computer Instructor", "Tutor"],
        "companies": ["Government Senior Secondary School Nabha", "DAV Public School", "Sacred Heart Convent School",
                      "Khalsa College", "Shemrock School"],
        "skills": ["teaching", "lesson_planning", "classroom_management", "curriculum_development", "ctet",
                   "pstet", "english", "punjabi", "mathematics", "communication", "public_speaking",
                   "ms_powerpoint", "patience"],
        "bullets": ["Taught classes 6 to 10", "Prepared lesson plans and worksheets",
                    "Conducted parent teacher meetings", "Organised science exhibitions"],
    },
}

UNKNOWN_SKILLS = ["Internet surfing", "MS Paint", "Cricket", "Hard work pays", "Karaoke"]


def pick_surface(rng, lexicon, canonical):
    surfaces = lexicon[canonical]
    s = rng.choice(surfaces)
    if rng.random() < 0.5:
        s = s.title() if len(s) > 3 else s.upper()
    return s


def load_lexicon(path="skills.tsv"):
    lex = {}
    for line in open(path, encoding="utf-8"):
        if line.startswith("#") or not line.strip():
            continue
        c, _, s = line.rstrip("\n").split("\t")
        lex[c] = s.split("|")
    return lex


def phone_variants(rng, digits):
    a, b = digits[:5], digits[5:]
    return rng.choice([f"+91 {a} {b}", f"+91-{a}-{b}", f"0{a} {b}", f"{digits}", f"+91{digits}", f"91 {digits}",
                       f"(+91) {a}-{b}"])


def fmt_date(rng, style, d):
    if d == "present":
        return rng.choice(["Present", "Present", "Current", "Till Date"])
    y, m = d
    if style == "mon":
        return f"{MONTHS[m - 1]} {y}"
    if style == "long":
        return f"{MONTHS_LONG[m - 1]} {y}"
    if style == "num":
        return f"{m:02d}/{y}"
    if style == "apos":
        return f"{MONTHS[m - 1]}'{y % 100:02d}"
    return f"{y}"


def gold_date(style, d):
    if d == "present":
        return "present"
    y, m = d
    return f"{y}" if style == "year" else f"{y}-{m:02d}"


def make_record(rng, lexicon, i):
    domain = rng.choice(list(DOMAINS))
    D = DOMAINS[domain]
    first, last = rng.choice(FIRST), rng.choice(LAST)
    name = f"{first} {last}"
    email = f"{first.lower()}.{last.lower()}{rng.randint(1, 99)}@{rng.choice(['gmail.com', 'yahoo.co.in', 'outlook.com', 'rediffmail.com'])}"
    digits = str(rng.choice([6, 7, 8, 9])) + "".join(str(rng.randint(0, 9)) for _ in range(9))
    has_phone = rng.random() > 0.1
    city = rng.choice(CITIES)
    address = f"House No. {rng.randint(1, 999)}, Ward {rng.randint(1, 30)}, {city} {rng.randint(140000, 160099)}" if rng.random() < 0.5 else None

    grad_year = rng.randint(2008, 2023)
    edu = []
    label, text = rng.choice(D["degrees"])
    gpa = round(rng.uniform(6.0, 9.5), 1) if rng.random() < 0.6 else None
    edu.append({"degree": label, "text": text, "institution": rng.choice(UNIS), "year": grad_year, "gpa": gpa,
                "pct": None if gpa else rng.randint(55, 90)})
    edu.append({"degree": "12th", "text": rng.choice(["12th", "Senior Secondary", "XII"]),
                "institution": rng.choice(BOARDS), "year": grad_year - rng.choice([3, 4]), "gpa": None,
                "pct": rng.randint(55, 95)})
    if rng.random() < 0.4:
        edu.append({"degree": "10th", "text": rng.choice(["10th", "Matriculation"]),
                    "institution": rng.choice(BOARDS), "year": edu[-1]["year"] - 2, "gpa": None,
                    "pct": rng.randint(55, 95)})

    exp = []
    cur = grad_year * 12 + rng.randint(5, 8)
    limit = 2026 * 12 + 5
    for k in range(rng.randint(1, 3)):
        if cur >= limit:
            break
        stop = cur + rng.randint(10, 30)
        job = {"title": rng.choice(D["titles"]), "company": rng.choice(D["companies"]),
               "city": rng.choice(CITIES), "start": (cur // 12, cur % 12 + 1),
               "bullets": rng.sample(D["bullets"], rng.randint(1, 3))}
        if stop >= limit:
            job["end"] = "present"
            exp.append(job)
            break
        job["end"] = (stop // 12, stop % 12 + 1)
        exp.append(job)
        cur = stop + rng.randint(1, 4)
    if exp and exp[-1]["end"] != "present" and rng.random() < 0.5:
        exp[-1]["end"] = "present"
    exp.reverse()
    skills = rng.sample(D["skills"], rng.randint(5, min(10, len(D["skills"]))))
    return {"domain": domain, "name": name, "email": email, "phone": digits if has_phone else None,
            "address": address, "edu": edu, "exp": exp, "skills": skills, "city": city}


def render(rng, lexicon, r, headerless):
    lines = []
    # contact
    phone_txt = phone_variants(rng, r["phone"]) if r["phone"] else None
    if rng.random() < 0.05:
        r = dict(r, email_text=r["email"].replace("@", " [at] "))
    email_txt = r.get("email_text", r["email"])
    style = rng.choice(["lines", "pipe", "labelled", "titled"])
    if style == "pipe":
        parts = [r["name"], email_txt] + ([phone_txt] if phone_txt else [])
        lines.append(" | ".join(parts))
        if r["address"]:
            lines.append(r["address"])
    elif style == "labelled" and not headerless:
        lines += ["RESUME", f"Name: {r['name']}", f"Email: {email_txt}"]
        if phone_txt:
            lines.append(f"Mobile: {phone_txt}")
        if r["address"]:
            lines.append(f"Address: {r['address']}")
    else:
        if style == "titled" and not headerless:
            lines.append("CURRICULUM VITAE")
        lines.append(r["name"])
        lines.append(email_txt)
        if phone_txt:
            lines.append(phone_txt)
        if r["address"]:
            lines.append(r["address"])
    lines.append("")

    def header(names):
        if headerless:
            return []
        n = rng.choice(names)
        s = rng.choice(["upper", "title", "colon", "underline", "equals"])
        if s == "upper":
            return [n.upper()]
        if s == "title":
            return [n]
        if s == "colon":
            return [n + ":"]
        if s == "underline":
            return [n.upper(), "-" * len(n)]
        return [f"== {n} =="]

    if rng.random() < 0.5:
        lines += header(["Career Objective", "Objective", "Summary"])
        lines.append(rng.choice([
            f"Motivated {DOMAINS[r['domain']]['titles'][0].lower()} seeking a government job opportunity.",
            "Looking for a challenging career opportunity where I can grow.",
            "Aspiring professional with hands-on experience and a passion for public service.",
        ]))
        lines.append("")

    # education
    lines += header(["Education", "Educational Qualifications", "Academic Qualifications", "Academics"])
    estyle = rng.choice(["one", "one", "two", "dash"])
    for e in r["edu"]:
        score = f"CGPA {e['gpa']}" if e["gpa"] else f"{e['pct']}%"
        if e["degree"] in ("12th", "10th") or estyle == "one":
            lines.append(f"{e['text']}, {e['institution']}, {e['year']}, {score}")
        elif estyle == "two":
            lines.append(f"{e['institution']}, {rng.choice(CITIES)}")
            lines.append(f"{e['text']} | {e['year']} | {score}")
        else:
            lines.append(f"{e['text']} – {e['institution']} – {e['year']} ({score})")
    lines.append("")

    # experience
    if r["exp"]:
        lines += header(["Work Experience", "Experience", "Employment History", "Professional Experience",
                         "Jobs Held So Far In Punjab"])
        xstyle = rng.choice(["paren", "pipe", "at", "two"])
        dstyle = rng.choice(["mon", "num", "year", "long", "mon", "num", "year", "long", "apos"])
        bullet = rng.choice(["-", "•", "*"])
        for e in r["exp"]:
            s, t = fmt_date(rng, dstyle, e["start"]), fmt_date(rng, dstyle, e["end"])
            if xstyle == "paren":
                lines.append(f"{e['title']}, {e['company']} ({s} – {t})")
            elif xstyle == "pipe":
                lines.append(f"{e['title']} | {e['company']} | {s} - {t}")
            elif xstyle == "at":
                lines.append(f"{e['title']} at {e['company']}, {e['city']}, {s} to {t}")
            else:
                lines.append(f"{e['company']}, {e['city']}")
                lines.append(f"{e['title']} | {s} - {t}")
            for b in e["bullets"]:
                lines.append(f"{bullet} {b}")
        lines.append("")

    # skills
    lines += header(["Skills", "Technical Skills", "Key Skills", "Core Competencies", "Skill Set"])
    items = []
    for c in r["skills"]:
        s = pick_surface(rng, lexicon, c)
        if c in ("python", "java", "angular", "excel", "tally", "autocad") and rng.random() < 0.4:
            s += " " + rng.choice(["3.9", "8", "2019", "12", "9"])
        items.append(s)
    if rng.random() < 0.3:
        items.append(rng.choice(UNKNOWN_SKILLS))
    sstyle = rng.choice(["comma", "bullets", "pipe"])
    if sstyle == "comma" or headerless:
        lines.append(", ".join(items))
    elif sstyle == "bullets":
        lines += [f"• {s}" for s in items]
    else:
        lines.append(" | ".join(items))
    lines.append("")

    if not headerless and rng.random() < 0.4:
        lines += header(["Hobbies", "Interests"])
        lines.append("Reading, travelling")
        lines.append("")
        lines += header(["Declaration"])
        lines.append("I hereby declare that the above information is true to the best of my knowledge.")
    return "\n".join(lines).rstrip() + "\n"


def gold(r):
    return {
        "contact": {"name": r["name"], "email": r["email"],
                    "phone": f"+91{r['phone']}" if r["phone"] else None,
                    "address": r["address"]},
        "education": [{"degree": e["degree"], "institution": e["institution"], "year": e["year"], "gpa": e["gpa"]}
                      for e in r["edu"]],
        "experience": [{"company": e["company"], "title": e["title"],
                        "start": gold_date(r["_dstyle"], e["start"]), "end": gold_date(r["_dstyle"], e["end"]),
                        "bullets": e["bullets"]} for e in r["exp"]],
        "skills": sorted(r["skills"]),
        "warnings": [],
    }


def main():
    lexicon = load_lexicon()
    rng = random.Random(SEED)
    os.makedirs(OUT, exist_ok=True)
    for i in range(1, N + 1):
        r = make_record(rng, lexicon, i)
        headerless = i % 6 == 0
        # the date style is drawn inside render; mirror it by seeding a sub-rng
        sub = random.Random(rng.random())
        text = render(sub, lexicon, r, headerless)
        r["_dstyle"] = detect_dstyle(text, r)
        with open(f"{OUT}/r{i:02d}.txt", "w", encoding="utf-8") as f:
            f.write(text)
        with open(f"{OUT}/r{i:02d}.json", "w", encoding="utf-8") as f:
            json.dump(gold(r), f, indent=2, ensure_ascii=False)
            f.write("\n")


def detect_dstyle(text, r):
    if not r["exp"]:
        return "mon"
    y, m = r["exp"][0]["start"]
    if f"{MONTHS_LONG[m - 1]} {y}" in text:
        return "long"
    if f"{MONTHS[m - 1]} {y}" in text:
        return "mon"
    if f"{m:02d}/{y}" in text:
        return "num"
    if f"{MONTHS[m - 1]}'{y % 100:02d}" in text:
        return "mon"
    return "year"


if __name__ == "__main__":
    main()
