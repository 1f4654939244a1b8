#!/usr/bin/env python3
"""Regenerates data/lexicon/lemmas_en_core.tsv.

The table maps inflected forms to lemmas for a fixed vocabulary of verbs and
nouns common in app-usage narratives. Regular forms are expanded from the base
lists below; irregular forms are listed explicitly and take precedence. A form
that is itself a base word is never remapped (so "setting" stays a noun).

Usage: tools/data/gen_lemmas.py > data/lexicon/lemmas_en_core.tsv
"""

import sys

VERBS = """
accept access activate add adjust agree allow alter analyze answer appear apply
approve archive arrive ask assign attach authenticate authorize avoid back
bake balance bet block book bookmark borrow browse budget calculate call cancel
capture change charge chat check checkout choose claim clean clear click clip
close collect combine comment compare complete confirm connect consent consider
contact contain continue control convert copy correct count cover create
customize decide decline delete deliver deposit describe design detect disable
display dispute donate download drop earn edit email enable end enroll enter
exercise expand expect explain explore export fill filter finish fix flag
focus follow gain generate greet guess handle happen help highlight hire host
identify import improve include increase indicate inform input install invest
invite join jog jump keep label land launch learn like limit link list listen
live load locate lock log login logout look love manage map mark match measure
message miss modify monitor move name navigate need note notice notify obtain
offer open operate order organize own pair park pass pause perform pick pin
place plan play post practice prefer prepare present press preview print
process provide publish purchase push rate reach receive recommend record
redeem refer refresh refund register reject release remember remind remove
rent reorder repeat replace reply report request require reserve reset
resolve respond rest restart restore retrieve return review reward save scan
schedule score scroll search secure select share ship shop sign skip snap sort
start stay step stop store stream submit subscribe suggest support swap swipe
switch sync tag talk tap track trade train transfer travel try turn type
unlock unsubscribe update upgrade upload use validate verify view visit wait
walk want watch wish work worry zoom
""".split()

NOUNS = """
account action activity address alert amount answer app application
appointment area article artist asset attempt audio balance bank banner bar
benefit bet bill book booking bottom box brand budget bundle business button
calendar calorie camera card cart category change channel charge chat choice
city class client code coin comment community company contact content coupon
course credential credit customer dashboard date day deal delivery department
detail device diet discount dish document dollar donation driver element email
entry error event exercise expense fee feed feedback field file filter fitness
flight folder follower food form friend fund game goal grocery group guide
habit history home hotel hour icon image information ingredient interest
invoice item job key lesson level library limit link list location lock log
loan mail map market meal member membership menu message method mile minute
mode month movie name network note notification number offer option order
page password payment period person phone photo picture place plan player
playlist point policy post preference premium price privacy problem product
profile program progress promo promotion purchase question quiz rate rating
reading receipt recipe recommendation record reminder report request
reservation restaurant result review reward ride room route rule run sale
saving schedule score screen search season section service session setting
share shop show sign site size skill song source song sport step store story
stream subscription suggestion summary task team test ticket time tip title
tool total track trade transaction transfer trip type update user video view
visit wallet website week weight window word workout year zone
""".split()

# Final-consonant doubling before -ed/-ing.
DOUBLE = set("""
bet chat clip drop jog log map pin plan scan ship shop skip snap stop swap
tag tap submit prefer refer control
""".split())

IRREGULAR = {
    # verbs
    "am": "be", "is": "be", "are": "be", "was": "be", "were": "be", "been": "be",
    "being": "be", "has": "have", "had": "have", "having": "have", "does": "do",
    "did": "do", "done": "do", "doing": "do", "goes": "go", "went": "go",
    "gone": "go", "going": "go", "got": "get", "gotten": "get", "gets": "get",
    "getting": "get", "made": "make", "makes": "make", "making": "make",
    "took": "take", "taken": "take", "takes": "take", "taking": "take",
    "saw": "see", "seen": "see", "sees": "see", "seeing": "see", "came": "come",
    "comes": "come", "coming": "come", "gave": "give", "given": "give",
    "gives": "give", "giving": "give", "found": "find", "finds": "find",
    "finding": "find", "bought": "buy", "buys": "buy", "buying": "buy",
    "paid": "pay", "pays": "pay", "paying": "pay", "sent": "send",
    "sends": "send", "sending": "send", "spent": "spend", "spends": "spend",
    "spending": "spend", "knew": "know", "known": "know", "knows": "know",
    "knowing": "know", "thought": "think", "thinks": "think",
    "thinking": "think", "told": "tell", "tells": "tell", "telling": "tell",
    "said": "say", "says": "say", "saying": "say", "kept": "keep",
    "puts": "put", "putting": "put", "sets": "set", "lets": "let",
    "letting": "let", "cuts": "cut", "cutting": "cut", "reads": "read",
    "ran": "run", "runs": "run", "running": "run", "brought": "bring",
    "brings": "bring", "bringing": "bring", "began": "begin", "begun": "begin",
    "begins": "begin", "beginning": "begin", "chose": "choose",
    "chosen": "choose", "wrote": "write", "written": "write", "writes": "write",
    "writing": "write", "drove": "drive", "driven": "drive", "drives": "drive",
    "driving": "drive", "ate": "eat", "eaten": "eat", "eats": "eat",
    "eating": "eat", "felt": "feel", "feels": "feel", "feeling": "feel",
    "heard": "hear", "hears": "hear", "hearing": "hear", "held": "hold",
    "holds": "hold", "holding": "hold", "lost": "lose", "loses": "lose",
    "losing": "lose", "met": "meet", "meets": "meet", "meeting": "meet",
    "sold": "sell", "sells": "sell", "selling": "sell", "sat": "sit",
    "sits": "sit", "sitting": "sit", "stood": "stand", "stands": "stand",
    "standing": "stand", "understood": "understand",
    "understands": "understand", "understanding": "understand",
    "forgot": "forget", "forgotten": "forget", "forgets": "forget",
    "forgetting": "forget", "hid": "hide", "hidden": "hide", "hides": "hide",
    "hiding": "hide", "shown": "show", "showed": "show", "shows": "show",
    "showing": "show", "slept": "sleep", "sleeps": "sleep",
    "sleeping": "sleep", "built": "build", "builds": "build",
    "building": "build", "broke": "break", "broken": "break",
    "breaks": "break", "breaking": "break", "woke": "wake", "woken": "wake",
    "rode": "ride", "ridden": "ride", "rides": "ride", "riding": "ride",
    "flew": "fly", "flown": "fly", "flies": "fly", "flying": "fly",
    "fell": "fall", "fallen": "fall", "falls": "fall", "falling": "fall",
    "grew": "grow", "grown": "grow", "grows": "grow", "growing": "grow",
    "drew": "draw", "drawn": "draw", "threw": "throw", "thrown": "throw",
    "spoke": "speak", "spoken": "speak", "speaks": "speak",
    "speaking": "speak", "led": "lead", "leads": "lead", "leading": "lead",
    "meant": "mean", "means": "mean", "meaning": "mean", "won": "win",
    "wins": "win", "winning": "win", "hits": "hit", "hitting": "hit",
    "shuts": "shut", "leaves": "leave", "leaving": "leave",
    # nouns
    "children": "child", "men": "man", "women": "woman", "feet": "foot",
    "teeth": "tooth", "mice": "mouse", "lives": "life", "wives": "wife",
    "knives": "knife", "halves": "half", "shelves": "shelf",
    "analyses": "analysis", "criteria": "criterion", "indices": "index",
    # contractions of the first-person subject
    "i've": "i", "i'm": "i", "i'd": "i", "i'll": "i", "we've": "we",
    "we're": "we", "we'll": "we", "they're": "they", "they've": "they",
    "can't": "can", "cannot": "can",
}

VOWELS = set("aeiou")


def plural(w):
    if w.endswith(("s", "x", "z", "ch", "sh")):
        return w + "es"
    if w.endswith("y") and len(w) > 1 and w[-2] not in VOWELS:
        return w[:-1] + "ies"
    return w + "s"


def past(w):
    if w.endswith("e"):
        return w + "d"
    if w.endswith("y") and w[-2] not in VOWELS:
        return w[:-1] + "ied"
    if w in DOUBLE:
        return w + w[-1] + "ed"
    return w + "ed"


def gerund(w):
    if w.endswith("ie"):
        return w[:-2] + "ying"
    if w.endswith("e") and not w.endswith(("ee", "ye", "oe")):
        return w[:-1] + "ing"
    if w in DOUBLE:
        return w + w[-1] + "ing"
    return w + "ing"


def main():
    base = set(VERBS) | set(NOUNS)
    table = dict(IRREGULAR)
    for n in NOUNS:
        table.setdefault(plural(n), n)
    for v in VERBS:
        for form in (plural(v), past(v), gerund(v)):
            table.setdefault(form, v)
    out = sys.stdout
    out.write("# inflected-form<TAB>lemma; generated by tools/data/gen_lemmas.py\n")
    for form in sorted(table):
        lemma = table[form]
        if form == lemma or (form in base and form not in IRREGULAR):
            continue
        out.write(f"{form}\t{lemma}\n")


if __name__ == "__main__":
    main()
