#!/usr/bin/env python3
"""Regenerates src/moviesim/data/lemmas.tsv.

The table carries the inflected forms the suffix rules cannot reach:
irregular verbs, irregular plurals, e-final gerunds (making -> make),
-ied pasts (carried -> carry), -ie/-ves/-oes plurals, and identity pins
for words the rules would mangle (during, famous, breed, ...).

Every emitted mapping is validated against the shipped rule set: keys
must resolve to their lemma through the fixpoint lemmatizer, and every
value must itself be a fixed point.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from moviesim.text.lemmas import Lemmatizer, apply_suffix_rules  # noqa: E402

OUT = ROOT / "src" / "moviesim" / "data" / "lemmas.tsv"

# lemma: space-separated irregular forms (the regular -s/-ing forms are
# appended automatically where they need table support)
IRREGULAR_VERBS = {
    "be": "am is are was were been being isn't aren't wasn't weren't",
    "have": "has had having hasn't hadn't haven't",
    "do": "does did done doing doesn't didn't don't",
    "say": "said saying says",
    "go": "goes went gone going",
    "get": "got gotten getting gets",
    "make": "made making makes",
    "know": "knew known knowing knows",
    "think": "thought thinking thinks",
    "take": "took taken taking takes",
    "see": "saw seen seeing sees",
    "come": "came coming comes",
    "want": "wanted wanting wants",
    "use": "used using uses",
    "find": "found finding finds",
    "give": "gave given giving gives",
    "tell": "told telling tells",
    "work": "worked working works",
    "call": "called calling calls",
    "try": "tried trying tries",
    "ask": "asked asking asks",
    "need": "needed needing needs",
    "feel": "felt feels",
    "become": "became becoming becomes",
    "leave": "left leaving leaves",
    "put": "putting puts",
    "mean": "meant means",
    "keep": "kept keeping keeps",
    "let": "letting lets",
    "begin": "began begun begins",
    "seem": "seemed seeming seems",
    "help": "helped helping helps",
    "talk": "talked talking talks",
    "turn": "turned turning turns",
    "start": "started starting starts",
    "show": "showed shown showing shows",
    "hear": "heard hearing hears",
    "play": "played playing plays",
    "run": "ran running runs",
    "move": "moved moving moves",
    "like": "liked liking likes",
    "live": "lived living",
    "believe": "believed believing believes",
    "hold": "held holding holds",
    "bring": "brought bringing brings",
    "happen": "happened happening happens",
    "write": "wrote written writing writes",
    "provide": "provided providing provides",
    "sit": "sat sitting sits",
    "stand": "stood standing stands",
    "lose": "lost losing loses",
    "pay": "paid paying pays",
    "meet": "met meets",
    "include": "included including includes",
    "continue": "continued continuing continues",
    "set": "setting sets",
    "learn": "learned learnt learning learns",
    "change": "changed changing changes",
    "lead": "led leading leads",
    "understand": "understood understanding understands",
    "watch": "watched watching watches",
    "follow": "followed following follows",
    "stop": "stopped stopping stops",
    "create": "created creating creates",
    "speak": "spoke spoken speaking speaks",
    "read": "reading reads",
    "spend": "spent spending spends",
    "grow": "grew grown growing grows",
    "open": "opened opening opens",
    "walk": "walked walking walks",
    "win": "won winning wins",
    "teach": "taught teaching teaches",
    "offer": "offered offering offers",
    "remember": "remembered remembering remembers",
    "consider": "considered considering considers",
    "appear": "appeared appearing appears",
    "buy": "bought buying buys",
    "serve": "served serving serves",
    "die": "died dying dies",
    "send": "sent sending sends",
    "build": "built builds",
    "stay": "stayed staying stays",
    "fall": "fell fallen falling falls",
    "cut": "cutting cuts",
    "reach": "reached reaching reaches",
    "kill": "killed killing kills",
    "raise": "raised raising raises",
    "pass": "passed passing passes",
    "sell": "sold selling sells",
    "decide": "decided deciding decides",
    "return": "returned returning returns",
    "explain": "explained explaining explains",
    "hope": "hoped hoping hopes",
    "develop": "developed developing develops",
    "carry": "carried carrying carries",
    "break": "broke broken breaking breaks",
    "receive": "received receiving receives",
    "agree": "agreed agreeing agrees",
    "support": "supported supporting supports",
    "hit": "hitting hits",
    "produce": "produced producing produces",
    "eat": "ate eaten eating eats",
    "cover": "covered covering covers",
    "catch": "caught catching catches",
    "draw": "drew drawn drawing draws",
    "choose": "chose chosen choosing chooses",
    "wait": "waited waiting waits",
    "fight": "fought fighting fights",
    "throw": "threw thrown throwing throws",
    "fly": "flew flown flying flies",
    "drive": "drove driven driving drives",
    "ride": "rode ridden riding rides",
    "sing": "sang sung singing sings",
    "drink": "drank drunk drinking drinks",
    "swim": "swam swum swimming swims",
    "forget": "forgot forgotten forgetting forgets",
    "steal": "stole stolen stealing steals",
    "sleep": "slept sleeping sleeps",
    "wake": "woke woken waking wakes",
    "wear": "wore worn wearing wears",
    "shoot": "shot shooting shoots",
    "hide": "hid hidden hiding hides",
    "hang": "hung hanging hangs",
    "shake": "shook shaken shaking shakes",
    "bite": "bit bitten biting bites",
    "blow": "blew blown blowing blows",
    "freeze": "froze frozen freezing freezes",
    "bend": "bent bending bends",
    "lend": "lent lending lends",
    "burn": "burned burnt burning burns",
    "deal": "dealt dealing deals",
    "dig": "dug digging digs",
    "feed": "fed feeding feeds",
    "fit": "fitting fits",
    "flee": "fled fleeing flees",
    "forgive": "forgave forgiven forgiving forgives",
    "hurt": "hurting hurts",
    "lay": "laid laying lays",
    "lie": "lain lying lies lied",
    "quit": "quitting quits",
    "rise": "risen rising rises",
    "seek": "sought seeking seeks",
    "shine": "shone shining shines",
    "shut": "shutting shuts",
    "slide": "slid sliding slides",
    "spread": "spreading spreads",
    "spring": "sprang sprung springing springs",
    "strike": "struck striking strikes",
    "swear": "swore sworn swearing swears",
    "sweep": "swept sweeping sweeps",
    "tear": "tore torn tearing tears",
    "wind": "wound winding winds",
    "bear": "bore borne bearing bears",
    "beat": "beaten beating beats",
    "bleed": "bled bleeding bleeds",
    "breed": "bred breeding breeds",
    "cast": "casting casts",
    "cling": "clung clinging clings",
    "cost": "costing costs",
    "creep": "crept creeping creeps",
    "weep": "wept weeping weeps",
    "kneel": "knelt kneeling kneels",
    "lean": "leaned leant leaning leans",
    "leap": "leapt leaping leaps",
    "prove": "proved proven proving proves",
    "sew": "sewn sewing sews",
    "shrink": "shrank shrunk shrinking shrinks",
    "sink": "sank sunk sinking sinks",
    "slay": "slew slain slaying slays",
    "sting": "stung stinging stings",
    "stink": "stank stunk stinking stinks",
    "stride": "strode striding strides",
    "swing": "swung swinging swings",
    "weave": "wove woven weaving weaves",
    "can": "could cannot can't couldn't",
    "will": "would won't wouldn't",
    "shall": "should shouldn't",
    "may": "might mightn't",
    "must": "mustn't",
    "arise": "arose arisen arising arises",
    "awake": "awoke awoken awaking awakes",
    "bind": "bound binding binds",
    "burst": "bursting bursts",
    "broadcast": "broadcasting broadcasts",
    "dwell": "dwelt dwelling dwells",
    "forbid": "forbade forbidden forbidding forbids",
    "foresee": "foresaw foreseen foreseeing foresees",
    "forsake": "forsook forsaken forsaking forsakes",
    "mislead": "misled misleading misleads",
    "mistake": "mistook mistaken mistaking mistakes",
    "overcome": "overcame overcoming overcomes",
    "overhear": "overheard overhearing overhears",
    "oversleep": "overslept oversleeping oversleeps",
    "overtake": "overtook overtaken overtaking overtakes",
    "rebuild": "rebuilt rebuilding rebuilds",
    "repay": "repaid repaying repays",
    "rethink": "rethought rethinking rethinks",
    "rewrite": "rewrote rewritten rewriting rewrites",
    "shed": "shedding sheds",
    "spin": "spun spinning spins",
    "spit": "spat spitting spits",
    "split": "splitting splits",
    "spell": "spelled spelt spelling spells",
    "smell": "smelled smelt smelling smells",
    "spill": "spilled spilt spilling spills",
    "dream": "dreamed dreamt dreaming dreams",
    "stick": "stuck sticking sticks",
    "strive": "strove striven striving strives",
    "swell": "swelled swollen swelling swells",
    "thrust": "thrusting thrusts",
    "tread": "trod trodden treading treads",
    "undergo": "underwent undergone undergoes undergoing",
    "undo": "undid undone undoes undoing",
    "unwind": "unwound unwinding unwinds",
    "uphold": "upheld upholding upholds",
    "upset": "upsetting upsets",
    "withdraw": "withdrew withdrawn withdrawing withdraws",
    "withstand": "withstood withstanding withstands",
    "sow": "sowed sown sowing sows",
    "mow": "mowed mown mowing mows",
    "dive": "dove dived diving dives",
    "plead": "pled pleaded pleading pleads",
    "bet": "betting bets",
    "bid": "bade bidden bidding bids",
}

# regular verbs whose inflection is plain concatenation (no final e, no
# consonant doubling, no y -> i); emitted in full as high-frequency forms
PLAIN_VERBS = """
accept account act adapt adjust adopt affect afford aim alarm alert
amount anchor annoy answer approach arm arrest ask assert assist
astonish attach attack attempt attend attract avoid await awaken back
bang banish bark bash beckon belong betray blast bleach bless blink
block bloom blush boast boil bolt bomb boost borrow bother bow box
brush bump bust buzz camp cash caution chant charm chart cheer claim
clash clean clear click climb clutch coach collect comb comfort command
commend comment complain conceal concern conduct confirm conform
confront connect consent consider consist consult contact contain
contend convert convey cook correct cough count cover crack crash crawl
creak croak crouch crunch crush curl dash dawn deliver demand depart
depend deploy deposit destroy detect develop differ direct disappoint
discover dismiss display distract disturb down drain dress drift drown
dust earn elect email embarrass employ end enjoy enlist enrich entrust
establish exclaim exist expand expect experiment explain export express
extend extract faint fasten fear feast fetch film finish fish fix flash
flicker flinch float flood flourish flow flush fold form frown gain
gasp gather glow gnaw golf govern grasp greet groan growl grunt guess
hand hang harm hatch haul haunt heal heap help hint hiss hitch hoist
howl hunt hush impress inform inherit insert insist inspect install
instruct insult intend interest interrupt invent invest itch join jolt
jump kick kiss knock lack land last laugh launch lean leap learn lick
lift limp link list listen loan lock long look march mark mash mask
match melt mend mention milk mind miss mix moan mock mount mourn munch
murder nail nourish obey object obtain offend order own pack paint
park part pass patch peck peel perform perish pick pinch pitch plant
play point polish ponder portray possess post pour pray preach predict
present press pretend prevent print process proclaim prolong prompt
protect protest publish pull pump punch punish push quench question
rain reach react recall reckon recommend record recruit reflect reform
refresh regard reject relax relent remain remark remind rent repair
repeat report represent request resent resist resort respect respond
rest restrict result retain retreat return reveal review reward risk
roam roar rock roll rush sail scatter scold scoop scorch scorn scratch
scream screech search season seem select shift shock shout shrug sigh
sign ski slash slow smash sniff snort snow soak sound spark splash
spray sprint squash squint stack stalk stall stamp start stash
stay steam stitch stomp storm straighten strain stray stream stress
stretch stroll strut stuff subject subtract succeed suck suggest survey
suspect swallow sway sweat swish switch talk taunt tempt tend test
thank thirst threaten thrash thrill tick tilt toast torment toss touch
track trail train transform transport trash treat trick trust tuck
turn twist unfold unlock unmask unpack vanish visit wail wait walk
wander want warm warn wash watch water weigh whirl whisk whisper wish
witness wonder work worship wreck wrench yank yawn yell
""".split()

# nouns whose plural is a bare +s; plurals emitted as ready-made entries
SIMPLE_NOUNS = """
absence age apple article audience badge battle bone bottle bridge
bubble bundle cable cage cake candle case castle cattle chance choice
circle clue code course crime culture curse dance date defense desire
device difference disease distance dose edge engine evidence example
excuse experience face failure feature fence figure file fire force
fortune frame future game gate gesture glove grade grape guide handle
hole horse house image instance issue judge juice lake language
lecture license line machine medicine message minute mistake moment
motive move movie name nature needle nerve niece noise nose note
notice nurse office orange package page palace pause peace phone phrase
picture piece pipe place plane plate price prince principle prize
promise purpose purse puzzle race range recipe ride role rope rose
route rule sauce scale scene science score sentence service shade
shape side site size slice smile space spice spouse stage statue stone
store stove structure style substance surface table tale taste temple
theatre theme tide title tone trade treasure tribe trouble tune type
value vehicle venue verse village voice volume vote wage wave whale
wire zone
""".split()

# comparative and superlative forms, grouped by orthography
ADJ_DOUBLING = "big hot sad mad wet fat thin flat slim grim dim red fit".split()
ADJ_Y = """
angry busy chilly cloudy clumsy crazy creepy curly deadly dirty dizzy
dusty early easy empty fancy filthy foggy friendly funny fuzzy gloomy
grumpy guilty happy healthy heavy hungry jolly juicy lazy lively lonely
lovely lucky merry messy mighty muddy nasty naughty noisy pretty rainy
rusty salty scary shaky shiny silly skinny sleepy spicy sticky sunny
tasty tiny tricky ugly wavy wealthy windy
""".split()
ADJ_E = """
brave close cute dense fine gentle huge humble large late loose nice
noble pale pure rare ripe rude safe simple stale strange tame true
vague wide wise
""".split()
ADJ_PLAIN = """
bold bright calm cheap clean clear cold dark dear deep fast fresh grand
great green hard high kind light long loud low mean near neat new old
plain poor proud quick quiet rich rough sharp short sick slow small
smart smooth soft stiff strong sweet swift tall tough warm weak young
""".split()

# regular verbs whose e-final / y-final / doubling orthography defeats the
# rules; the generator derives exactly the forms that need table entries
REGULAR_VERBS_E = """
achieve admire advise announce argue arrange arrive assume bake balance
bathe behave blame bounce breathe bruise bubble calculate capture
care cause celebrate challenge charge chase circle close combine compare
compete complete confuse convince cradle dance dare
debate declare decorate dedicate define describe deserve desire dine
divide dodge doze drizzle ease encourage engage erase escape
estimate examine exchange excite excuse exercise expose face fade fake
file fire force gaze glance glare grade guide handle hate hike hire
ignore imagine improve increase indicate inspire invite joke judge
juggle love manage measure memorize merge mumble name notice nudge
observe operate organize owe pace package paste pause phone piece pile
place please pledge poke praise prepare preserve promise pronounce
propose puzzle race rattle realize recognize reduce refuse
release remove replace require rescue reserve retire reverse rhyme
rinse rule save scare schedule score scrape separate settle shape share
shave shove smile sneeze snore solve squeeze stare state store
struggle stumble style suppose surprise tangle taste tease tickle
trace trade trouble tumble type untie update urge value vote wade
waste wave whine whistle wiggle wipe wrestle ache accuse curse seize starve
""".split()

REGULAR_VERBS_Y = """
apply bury carry copy cry deny dry empty envy ferry fry hurry marry
study supply tidy vary worry bully pity rely reply spy defy occupy
satisfy terrify testify qualify notify multiply magnify justify identify
horrify glorify fortify falsify dignify clarify certify amplify
""".split()

# verbs that double a final consonant outside the undoubling set or
# otherwise confuse the -ed rule
REGULAR_VERBS_DOUBLING = """
travel cancel label model quarrel signal equal fuel marvel panel
pedal shovel spiral tunnel worship kidnap handicap program format
combat regret commit admit permit submit omit transmit refer prefer
occur transfer control patrol
""".split()

IE_NOUN_PLURALS = """
movie cookie zombie genie pixie rookie sortie calorie prairie smoothie
selfie hoodie newbie goalie birdie laddie budgie collie doggie kiddie
hippie yuppie walkie talkie junkie bootie cutie sweetie townie
""".split()

VES_PLURALS = {
    "wolves": "wolf", "knives": "knife", "wives": "wife", "lives": "life",
    "halves": "half", "loaves": "loaf", "thieves": "thief",
    "shelves": "shelf", "calves": "calf", "elves": "elf", "scarves": "scarf",
    "hooves": "hoof", "selves": "self", "themselves": "themselves",
    "ourselves": "ourselves", "yourselves": "yourselves",
}

OES_PLURALS = {
    "heroes": "hero", "potatoes": "potato", "tomatoes": "tomato",
    "echoes": "echo", "torpedoes": "torpedo", "volcanoes": "volcano",
    "tornadoes": "tornado", "mosquitoes": "mosquito", "dominoes": "domino",
    "vetoes": "veto", "embargoes": "embargo", "cargoes": "cargo",
}

IRREGULAR_PLURALS = {
    "men": "man", "women": "woman", "children": "child", "feet": "foot",
    "teeth": "tooth", "mice": "mouse", "geese": "goose", "oxen": "ox",
    "criteria": "criterion", "phenomena": "phenomenon", "indices": "index",
    "appendices": "appendix", "matrices": "matrix", "analyses": "analysis",
    "crises": "crisis", "theses": "thesis", "hypotheses": "hypothesis",
    "oases": "oasis", "diagnoses": "diagnosis", "cacti": "cactus",
    "fungi": "fungus", "nuclei": "nucleus", "alumni": "alumnus",
    "stimuli": "stimulus", "syllabi": "syllabus", "bacteria": "bacterium",
    "curricula": "curriculum", "memoranda": "memorandum", "wharves": "wharf",
}

# words the bare rules would mangle; pinned to themselves
IDENTITY_PINS = """
during morning evening nothing something anything everything ceiling
darling dumpling sibling shilling herring pudding gosling duckling
seedling sterling inning outing awning lightning cunning stocking viking
hundred sacred hatred kindred naked wicked crooked rugged ragged
wretched beloved
speed greed creed indeed exceed proceed succeed
this thus yes his whereas gas bus plus bonus chaos lens news series species
mrs oops alas amidst amongst
analysis always perhaps besides clothes trousers scissors pants
shorts billiards diabetes rabies measles physics politics
economics mathematics athletics gymnastics ethics tennis
status campus virus census circus crisis basis oasis thesis
canvas atlas alias bias iris pelvis axis
famous curious serious various dangerous nervous obvious jealous
gorgeous enormous previous precious delicious suspicious anxious
ambitious cautious conscious fabulous furious generous glorious
gracious hilarious humorous infamous ingenious luxurious malicious
marvelous miraculous mysterious notorious numerous oblivious
outrageous pompous prosperous rebellious ridiculous spacious
spontaneous superstitious tedious tremendous unanimous vicious
victorious vigorous
""".split()

SPECIAL = {
    # possessive-like and contraction leftovers
    "won't": "will", "can't": "can", "cannot": "can",
    "o'clock": "o'clock", "ma'am": "ma'am", "y'all": "you",
    # high-frequency noun/verb collisions worth pinning to the noun
    "meeting": "meeting", "feeling": "feeling", "building": "building",
    "meaning": "meaning", "beginning": "beginning", "wedding": "wedding",
    "clothing": "clothing", "housing": "housing",
}


def _needs_entry(form: str, lemma: str, rules_only: Lemmatizer) -> bool:
    """True when the bare suffix rules do not already map form -> lemma."""
    return rules_only.lemma(form) != lemma


def build_table() -> dict[str, str]:
    rules_only = Lemmatizer({})
    table: dict[str, str] = {}

    def put(form: str, lemma: str) -> None:
        form = form.strip().lower()
        lemma = lemma.strip().lower()
        if not form or form == lemma and not _mangled(form):
            return
        existing = table.get(form)
        if existing is not None and existing != lemma:
            raise SystemExit(f"conflicting entries for {form!r}: {existing!r} vs {lemma!r}")
        table[form] = lemma

    def _mangled(word: str) -> bool:
        return rules_only.lemma(word) != word

    for lemma, forms in IRREGULAR_VERBS.items():
        if _mangled(lemma):
            put(lemma, lemma)
        for form in forms.split():
            put(form, lemma)

    for base in REGULAR_VERBS_E:
        if base.endswith("ie"):
            gerund = base[:-2] + "ying"
        else:
            gerund = base[:-1] + "ing"
        for form in (gerund, base + "d", base + "s"):
            if _needs_entry(form, base, rules_only):
                put(form, base)

    for base in REGULAR_VERBS_Y:
        stem = base[:-1]
        for form in (stem + "ied", stem + "ies", base + "ing"):
            if _needs_entry(form, base, rules_only):
                put(form, base)

    for base in REGULAR_VERBS_DOUBLING:
        doubled = base + base[-1]
        for form in (doubled + "ed", doubled + "ing", base + "ed", base + "ing", base + "s"):
            if _needs_entry(form, base, rules_only):
                put(form, base)

    for base in PLAIN_VERBS:
        if base.endswith("e") or (base.endswith("y") and base[-2] not in "aeiou"):
            raise SystemExit(f"{base!r} does not inflect by concatenation")
        plural = base + "es" if base.endswith(("s", "x", "z", "ch", "sh")) else base + "s"
        for form in (base + "ing", base + "ed", plural):
            put(form, base)

    for noun in SIMPLE_NOUNS:
        if noun.endswith(("s", "x", "z", "ch", "sh", "f", "fe")) or (
            noun.endswith("y") and noun[-2] not in "aeiou"
        ):
            raise SystemExit(f"{noun!r} does not pluralize with a bare s")
        put(noun + "s", noun)

    for adj in ADJ_DOUBLING:
        put(adj + adj[-1] + "er", adj)
        put(adj + adj[-1] + "est", adj)
    for adj in ADJ_Y:
        put(adj[:-1] + "ier", adj)
        put(adj[:-1] + "iest", adj)
    for adj in ADJ_E:
        put(adj + "r", adj)
        put(adj + "st", adj)
    for adj in ADJ_PLAIN:
        put(adj + "er", adj)
        put(adj + "est", adj)

    for noun in IE_NOUN_PLURALS:
        put(noun + "s", noun)

    for mapping in (VES_PLURALS, OES_PLURALS, IRREGULAR_PLURALS, SPECIAL):
        for form, lemma in mapping.items():
            put(form, lemma)
            if _mangled(lemma):
                put(lemma, lemma)

    for word in IDENTITY_PINS:
        put(word, word)

    return table


def validate(table: dict[str, str]) -> None:
    lem = Lemmatizer(table)
    for form, lemma in table.items():
        got = lem.lemma(form)
        if got != lemma:
            raise SystemExit(f"table broken: {form!r} resolves to {got!r}, wanted {lemma!r}")
        fixed = lem.lemma(lemma)
        if fixed != lemma:
            raise SystemExit(f"value not a fixed point: {lemma!r} -> {fixed!r}")
    for form, expected in (("running", "run"), ("was", "be"), ("movies", "movie"),
                           ("making", "make"), ("carried", "carry"), ("wolves", "wolf"),
                           ("bigger", "big"), ("happiest", "happy"), ("travelling", "travel")):
        got = lem.lemma(form)
        if got != expected:
            raise SystemExit(f"spot check failed: {form!r} -> {got!r}, wanted {expected!r}")
    sample = ["cars", "boxes", "watches", "pressings", "walked", "hoping"]
    for tok in sample:
        once = lem.lemma(tok)
        if lem.lemma(once) != once:
            raise SystemExit(f"not idempotent on {tok!r}")
    _ = apply_suffix_rules  # imported for callers exploring the rules


def main() -> None:
    table = build_table()
    validate(table)
    lines = ["# form<TAB>lemma; regenerate with scripts/generate_lemma_table.py"]
    for form in sorted(table):
        lines.append(f"{form}\t{table[form]}")
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{OUT}: {len(table)} entries")


if __name__ == "__main__":
    main()
