"""Writes skills.tsv: canonical_id<TAB>category<TAB>surface1|surface2|...

Each spec line below is `canonical: extra surfaces separated by |`. The
canonical id with underscores turned into spaces is always a surface.
"""

TECHNICAL = """
python: py
java: core java
javascript: js|ecmascript|es6|vanilla js
typescript: ts
c: c language|c programming
cpp: c++|cplusplus
csharp: c#|c sharp
go: golang
rust: rust lang
kotlin:
swift:
objective_c: objective-c|objc
php:
ruby:
perl:
scala:
r: r programming|r language
matlab:
julia:
dart:
lua:
haskell:
elixir:
erlang:
clojure:
fortran:
cobol:
pascal:
vb_net: vb.net|visual basic .net
visual_basic: vb|vba|visual basic for applications
assembly: assembly language|asm
shell_scripting: shell|shell script|bash|bash scripting|unix shell
powershell:
groovy:
solidity:
html: html5|hypertext markup language
css: css3|cascading style sheets
sass: scss
less_css: less
bootstrap: twitter bootstrap
tailwind_css: tailwind|tailwindcss
jquery:
react: reactjs|react.js|react js
angular: angularjs|angular.js|angular js
vue: vuejs|vue.js
svelte:
nextjs: next.js|next js
nuxtjs: nuxt.js|nuxt
redux:
webpack:
vite: vitejs
nodejs: node|node.js|node js
expressjs: express|express.js
django:
flask:
fastapi: fast api
spring: spring framework
spring_boot: springboot
hibernate:
struts:
laravel:
codeigniter:
symfony:
ruby_on_rails: rails|ror
aspnet: asp.net|asp.net mvc|asp net
dotnet: .net|.net framework|dot net
dotnet_core: .net core|asp.net core
graphql:
rest_api: rest|restful|restful api|rest apis|restful services
soap: soap web services
grpc:
websockets: websocket
microservices: microservice architecture
sql: structured query language
mysql: my sql
postgresql: postgres|postgre sql
oracle_database: oracle|oracle db|oracle sql|pl/sql|plsql
sql_server: ms sql|mssql|microsoft sql server|ms sql server
sqlite:
mongodb: mongo|mongo db
cassandra: apache cassandra
redis:
elasticsearch: elastic search|elk
dynamodb: dynamo db
firebase:
neo4j:
mariadb:
couchdb:
hbase:
snowflake:
bigquery: google bigquery
redshift: amazon redshift
data_warehousing: data warehouse|dwh
etl: extract transform load
aws: amazon web services
azure: microsoft azure
gcp: google cloud|google cloud platform
docker: docker containers
kubernetes: k8s
openshift:
terraform:
ansible:
puppet:
chef:
jenkins:
github_actions:
gitlab_ci: gitlab ci/cd
circleci:
ci_cd: ci/cd|continuous integration|continuous delivery|continuous deployment
devops:
linux: unix|ubuntu|centos|red hat linux|rhel
windows_server:
nginx:
apache_http_server: apache server|apache httpd
tomcat: apache tomcat
git: github|gitlab|bitbucket
svn: subversion
jira:
confluence:
maven:
gradle:
npm:
yarn:
postman:
selenium: selenium webdriver
cypress:
junit:
testng:
pytest:
jest:
mocha:
manual_testing: manual qa
automation_testing: test automation|automated testing
unit_testing: unit tests
performance_testing: load testing|jmeter|apache jmeter
api_testing:
machine_learning: ml
deep_learning: dl
artificial_intelligence: ai
natural_language_processing: nlp
computer_vision: cv|image processing
data_science:
data_analysis: data analytics|analytics
data_visualization: data viz|visualisation
statistics: statistical analysis
predictive_modeling: predictive modelling
time_series_analysis: time series|forecasting
big_data:
hadoop: apache hadoop|hdfs
spark: apache spark|pyspark
kafka: apache kafka
airflow: apache airflow
hive: apache hive
pig: apache pig
tensorflow: tf
pytorch: torch
keras:
scikit_learn: sklearn|scikit-learn|scikit learn
pandas:
numpy:
scipy:
matplotlib:
seaborn:
opencv: open cv
nltk:
spacy:
huggingface: hugging face|transformers
llm: large language models|llms
generative_ai: gen ai|genai
prompt_engineering:
mlops:
tableau:
power_bi: powerbi|microsoft power bi
qlikview: qlik|qlik sense
looker:
excel: ms excel|microsoft excel|advanced excel|excel vba
ms_word: word|microsoft word
ms_powerpoint: powerpoint|microsoft powerpoint|ppt
ms_office: microsoft office|office 365|ms-office|msoffice
ms_access: microsoft access|access
outlook: ms outlook
google_sheets:
google_workspace: g suite|gsuite
spss: ibm spss
sas: sas programming
stata:
alteryx:
sap: sap erp
sap_fico: sap fi|sap fi/co|sap fi-co
sap_mm:
sap_sd:
salesforce: sfdc
crm: customer relationship management
erp: enterprise resource planning
tally: tally erp|tally erp 9|tally prime
busy_accounting: busy
quickbooks:
zoho_books: zoho
gst: gst filing|gst returns|goods and services tax
income_tax: income tax returns|itr filing
accounting: accounts|bookkeeping|book keeping
financial_analysis: financial modelling|financial modeling
auditing: audit|internal audit
budgeting:
payroll: payroll processing
taxation:
banking_operations: banking
cash_handling:
inventory_management: stock management
supply_chain_management: supply chain|scm
procurement: purchasing
logistics:
data_entry: data entry operations
typing: typing speed|english typing|hindi typing|punjabi typing
stenography: steno|shorthand
computer_operations: computer operator|basic computers|computer knowledge|computer basics
ccc: course on computer concepts
o_level: nielit o level
dca: diploma in computer applications
pgdca: post graduate diploma in computer applications
office_administration: office management|administration
record_keeping: records management|file management
drafting: noting and drafting
autocad: auto cad
solidworks: solid works
catia:
ansys:
revit:
staad_pro: staad|staad.pro
primavera: primavera p6
ms_project: microsoft project
civil_engineering:
mechanical_engineering:
electrical_engineering:
electronics: electronics engineering
surveying: land surveying|total station
estimation_and_costing: estimation|costing|quantity surveying
construction_management: site supervision|site management
structural_analysis: structural design
plc_programming: plc|scada
embedded_systems: embedded c
arduino:
raspberry_pi:
iot: internet of things
vlsi: verilog|vhdl
pcb_design: pcb
hvac:
welding:
electrician: electrical wiring|wiring
plumbing:
fitter: fitting
machining: cnc|cnc machining|lathe operation
automobile_repair: automobile|vehicle maintenance
driving: light motor vehicle|lmv|heavy motor vehicle|hmv|driving license
networking: computer networks|network administration|tcp/ip
ccna: cisco ccna
cybersecurity: cyber security|information security|infosec
ethical_hacking: penetration testing|pentesting
firewall: firewalls
hardware_maintenance: computer hardware|hardware and networking|hardware troubleshooting
technical_support: it support|desktop support|helpdesk|help desk
system_administration: sysadmin|system admin
active_directory:
vmware: virtualization
blockchain:
android_development: android|android sdk
ios_development: ios
flutter:
react_native: react-native
xamarin:
unity: unity3d|unity 3d
game_development:
ui_design: ui|user interface design
ux_design: ux|user experience|user experience design
figma:
adobe_xd: xd
adobe_photoshop: photoshop
adobe_illustrator: illustrator
adobe_premiere_pro: premiere pro|premiere
after_effects: adobe after effects
coreldraw: corel draw|corel
canva:
graphic_design: graphics design
video_editing:
wordpress: wp
shopify:
seo: search engine optimization|search engine optimisation
sem: search engine marketing
digital_marketing: online marketing
social_media_marketing: smm|social media
content_writing: copywriting|content creation
email_marketing:
google_analytics: ga
google_ads: adwords|google adwords
market_research:
sales: field sales|b2b sales|b2c sales
business_development: bd
lead_generation:
negotiation: negotiation skills
customer_service: customer support|customer care|client servicing
cold_calling: telecalling|tele calling|telesales
retail_management: retail
project_management: pm|project planning
agile: agile methodology|agile methodologies
scrum: scrum master
kanban:
pmp: project management professional
six_sigma: lean six sigma
itil:
business_analysis: business analyst|requirements gathering
product_management:
risk_management:
quality_assurance: qa|quality control|qc
human_resources: hr|hr management
recruitment: recruiting|talent acquisition|hiring
training_and_development: l&d|learning and development
teaching: classroom teaching|tutoring
lesson_planning:
curriculum_development:
classroom_management:
ctet: central teacher eligibility test
pstet: punjab state teacher eligibility test
nursing: gnm|anm|patient care
first_aid: cpr|basic life support|bls
pharmacy: pharmaceutics
lab_technician: laboratory techniques|lab techniques
phlebotomy:
medical_coding:
hospital_management: healthcare administration
counselling: counseling
social_work:
community_outreach: community mobilization
agriculture: farming|agronomy
horticulture:
animal_husbandry: livestock management|dairy farming
food_processing:
food_safety: haccp|fssai
cooking: culinary|chef skills
hospitality: hotel management
tourism: travel and tourism
event_management: event planning
photography:
legal_research: legal drafting
law: litigation|corporate law
journalism: reporting
translation: translator|interpretation
hindi: hindi language
punjabi: punjabi language|gurmukhi
english: english language
urdu:
french:
german:
spanish:
sanskrit:
mathematics: maths|math
physics:
chemistry:
biology:
economics:
reasoning: logical reasoning|quantitative aptitude|aptitude
general_knowledge: gk|general awareness|current affairs
data_structures: dsa|data structures and algorithms|algorithms
object_oriented_programming: oop|oops|object oriented programming
design_patterns:
system_design:
operating_systems: os
dbms: database management|database management systems|rdbms
compiler_design:
computer_architecture:
software_engineering: sdlc
web_development: web designing|web design|full stack|full stack development|mern|mean stack
frontend_development: front end|frontend|front-end development
backend_development: back end|backend|back-end development
cloud_computing: cloud
linux_administration: linux admin
bash_scripting_automation: automation scripting
regex: regular expressions
json:
xml:
yaml:
markdown:
latex:
jupyter: jupyter notebook|jupyter notebooks
vs_code: visual studio code|vscode
visual_studio:
eclipse:
intellij: intellij idea
android_studio:
unix_tools: awk|sed|grep
opengl:
cuda:
quantum_computing:
ansible_tower:
apache_beam:
apache_flink: flink
apache_nifi: nifi
apache_solr: solr
azure_devops: vsts
azure_data_factory: adf
databricks:
dbt: data build tool
delta_lake:
informatica: informatica powercenter
talend:
ssis: sql server integration services
ssrs: sql server reporting services
ssas: sql server analysis services
excel_pivot_tables: pivot tables|pivot table
vlookup: v-lookup|xlookup
macros: excel macros
sharepoint: ms sharepoint
power_automate: microsoft flow
power_apps: powerapps
rpa: robotic process automation
uipath: ui path
automation_anywhere:
blue_prism:
servicenow: service now
zendesk:
freshdesk:
hubspot:
mailchimp:
wix:
joomla:
drupal:
magento:
woocommerce:
three_js: three.js|threejs
d3js: d3|d3.js
chartjs: chart.js
socket_io: socket.io
rabbitmq: rabbit mq
activemq:
celery:
gunicorn:
pandas_profiling:
xgboost:
lightgbm:
catboost:
random_forest: random forests
logistic_regression:
linear_regression: regression analysis
clustering: k-means|kmeans
reinforcement_learning: rl
recommender_systems: recommendation systems
speech_recognition: asr
ocr: optical character recognition|tesseract
gis: arcgis|qgis|geographic information systems
remote_sensing:
matlab_simulink: simulink
labview:
proteus:
multisim:
pspice:
eagle_pcb: eagle
keil:
altium: altium designer
cad_cam: cad/cam
gd_and_t: gd&t|geometric dimensioning and tolerancing
lean_manufacturing: lean|kaizen|5s
tpm: total productive maintenance
iso_9001: iso 9001:2015|iso
safety_management: hse|health and safety|occupational safety
fire_safety: fire fighting
security_guard: security services|security operations
housekeeping:
front_office: front desk|reception|receptionist
e_governance: egovernance|e-office
rti: right to information
public_administration: governance
panchayati_raj:
rural_development:
"""

SOFT = """
communication: communication skills|verbal communication|written communication|good communication
teamwork: team work|team player|collaboration|team building
leadership: team leadership|leading teams
problem_solving: problem-solving|troubleshooting skills|analytical problem solving
critical_thinking: analytical thinking|analytical skills
time_management: punctuality|meeting deadlines
adaptability: flexibility|adaptable
creativity: creative thinking|innovation
attention_to_detail: detail oriented|detail-oriented|accuracy
decision_making:
conflict_resolution:
emotional_intelligence:
interpersonal_skills: interpersonal|people skills
public_speaking: presentation skills|presentations
active_listening: listening
work_ethic: hard working|hardworking|dedication|diligence
self_motivation: self motivated|self-motivated|motivated
multitasking: multi tasking|multi-tasking
organization: organisational skills|organizational skills|planning and organizing
stress_management: working under pressure|works well under pressure
customer_orientation: customer focus|customer focused
mentoring: coaching
empathy:
patience:
integrity: honesty
resilience:
negotiation_soft: persuasion
cultural_awareness: cross cultural communication
"""


def entries(block, category):
    for line in block.strip().splitlines():
        canonical, _, rest = line.partition(":")
        canonical = canonical.strip()
        surfaces = [canonical.replace("_", " ")]
        surfaces += [s.strip() for s in rest.split("|") if s.strip()]
        seen = []
        for s in surfaces:
            if s not in seen:
                seen.append(s)
        yield canonical, category, seen


def main(path="skills.tsv"):
    ids = set()
    with open(path, "w", encoding="utf-8") as f:
        f.write("# canonical_id\tcategory\tsurfaces\n")
        for block, cat in ((TECHNICAL, "technical"), (SOFT, "soft")):
            for canonical, category, surfaces in entries(block, cat):
                assert canonical not in ids, canonical
                ids.add(canonical)
                f.write(f"{canonical}\t{category}\t{'|'.join(surfaces)}\n")
    print(len(ids), "entries")


if __name__ == "__main__":
    main()
