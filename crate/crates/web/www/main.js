import init, { Demo } from './pkg/jobsphere_web.js';

const $ = (id) => document.getElementById(id);
const esc = (s) => String(s).replace(/[&<>"]/g, (c) => ({ '&': '&amp;', '<': '&lt;', '>': '&gt;', '"': '&quot;' })[c]);
const fail = (el, e) => { el.innerHTML = `<p class="err">${esc(e.message || e)}</p>`; };

const SLIDERS = [
  ['sem', 'semantic', 0.35],
  ['skill', 'skills', 0.30],
  ['loc', 'location', 0.15],
  ['sal', 'salary', 0.10],
  ['rec', 'recency', 0.10],
  ['lambda', 'diversity', 0.05],
];

const PROFILE = {
  user_id: 'demo',
  skills: ['excel', 'tally', 'accounting', 'data_entry'],
  education_level: 'bachelor',
  age: 24,
  citizen: true,
  home: { lat: 30.901, lon: 75.857 },
  desired_salary_min: 15000,
  preferences: { categories: ['Banking'], job_types: [] },
  profile_text: 'commerce graduate in ludhiana with tally and excel, looking for accounts or bank clerk work',
};

let demo;

function ask(ev) {
  ev?.preventDefault();
  const out = $('ask-out');
  try {
    const a = JSON.parse(demo.ask($('ask-text').value, $('ask-lang').value));
    const chips = a.citations.map((c) => `<span class="chip" title="${esc(c.quoted_span)}">${esc(c.doc_id)} ${c.score.toFixed(2)}</span>`).join('');
    out.innerHTML = a.answered
      ? `<pre>${esc(a.text)}</pre>${chips}`
      : `<p class="refused">${esc(a.text)}</p>`;
  } catch (e) { fail(out, e); }
}

function sliderValues() {
  return Object.fromEntries(SLIDERS.map(([k]) => [k, Number($(`s-${k}`).value)]));
}

function recommend() {
  const out = $('rec-out');
  for (const [k] of SLIDERS) $(`v-${k}`).textContent = Number($(`s-${k}`).value).toFixed(2);
  try {
    const rows = JSON.parse(demo.recommend($('profile').value, JSON.stringify(sliderValues()), Number($('top').value)));
    out.innerHTML = `<table><tr><th>#</th><th>job</th><th>category</th><th>location</th><th>relevance</th><th>p(apply)</th><th>why</th></tr>${
      rows.map((r, i) => `<tr><td>${i + 1}</td><td>${esc(r.title)}<br><small>${esc(r.job_id)}</small></td><td>${esc(r.category)}</td>` +
        `<td>${esc(r.location)}</td><td>${r.relevance.toFixed(3)}</td><td>${r.p_apply.toFixed(3)}</td><td><small>${esc(r.summary)}</small></td></tr>`).join('')
    }</table>`;
  } catch (e) { fail(out, e); }
}

function assemble(ev) {
  ev?.preventDefault();
  const out = $('test-out');
  try {
    const t = JSON.parse(demo.assemble($('blueprint').value, Number($('seed').value) >>> 0));
    out.innerHTML = `<p>${esc(t.test_id)}: ${t.questions.length} questions, ${Math.round(t.total_seconds / 60)} min</p><ol>${
      t.questions.map((q) => `<li>${esc(q.text)} <small>[${q.topic}, difficulty ${q.difficulty}]</small>${
        q.options.length ? `<br><small>${q.options.map(esc).join(' | ')}</small>` : ''}</li>`).join('')
    }</ol>`;
  } catch (e) { fail(out, e); }
}

async function main() {
  await init();
  demo = new Demo(Date.now(), 2026);
  $('status').textContent = 'Engine running in WebAssembly. Nothing leaves the page.';
  $('profile').value = JSON.stringify(PROFILE, null, 2);
  $('sliders').innerHTML = SLIDERS.map(([k, label, v]) =>
    `<label for="s-${k}">${label}</label><input id="s-${k}" type="range" min="0" max="1" step="0.01" value="${v}"><span id="v-${k}"></span>`).join('');
  for (const [k] of SLIDERS) $(`s-${k}`).addEventListener('input', recommend);
  $('profile').addEventListener('change', recommend);
  $('top').addEventListener('change', recommend);
  $('ask-form').addEventListener('submit', ask);
  $('test-form').addEventListener('submit', assemble);
  ask();
  recommend();
  assemble();
}

main().catch((e) => { $('status').textContent = `Failed to start: ${e}`; });
