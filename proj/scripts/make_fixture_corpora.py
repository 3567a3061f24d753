#!/usr/bin/env python3
# Copyright 2026 The Morphoton Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes UniMorph-format fixture corpora for tr, fi and ka.

The paradigms are generated from hand-picked lemma lists with regular
morphology only (lemmas with irregular stems are left out). The output is
meant for offline development and tests; drop real UniMorph files into
data/unimorph/ to replace them.

    python3 scripts/make_fixture_corpora.py data/unimorph
"""

import os
import sys

# ---------------------------------------------------------------- Turkish

TR_BACK = set("aıou")
TR_VOWELS = set("aeıioöuü")
TR_VOICELESS = set("çfhkpsşt")


def tr_last_vowel(s):
    for ch in reversed(s):
        if ch in TR_VOWELS:
            return ch
    return "e"


def tr_a(s):
    return "a" if tr_last_vowel(s) in TR_BACK else "e"


def tr_i(s):
    v = tr_last_vowel(s)
    return {"a": "ı", "ı": "ı", "o": "u", "u": "u",
            "e": "i", "i": "i", "ö": "ü", "ü": "ü"}[v]


def tr_d(s):
    return "t" if s[-1] in TR_VOICELESS else "d"


def tr_expand(stem, suffix):
    """Appends a suffix written with archiphonemes A, I, D and buffer (y)/(n)."""
    out = stem
    i = 0
    while i < len(suffix):
        ch = suffix[i]
        if suffix.startswith("(y)", i) or suffix.startswith("(n)", i):
            if out[-1] in TR_VOWELS:
                out += suffix[i + 1]
            i += 3
            continue
        if ch == "A":
            out += tr_a(out)
        elif ch == "I":
            out += tr_i(out)
        elif ch == "D":
            out += tr_d(out)
        else:
            out += ch
        i += 1
    return out


def tr_soften(stem):
    return stem[:-1] + {"k": "ğ", "p": "b", "ç": "c", "t": "d"}[stem[-1]]


TR_PERSON_Z = [("1;SG", "(y)Im"), ("2;SG", "sIn"), ("3;SG", ""),
               ("1;PL", "(y)Iz"), ("2;PL", "sInIz"), ("3;PL", "lAr")]
TR_PERSON_K = [("1;SG", "m"), ("2;SG", "n"), ("3;SG", ""),
               ("1;PL", "k"), ("2;PL", "nIz"), ("3;PL", "lAr")]

TR_VERBS = """
ol öl gel al ver yap bak gör sev iç yaz oku bil bul çalış konuş otur dur sor aç
başla bekle anla dinle söyle iste düşün gül koş yüz öp kes seç çiz taşı sat tut
uç doğ düş bit geç kal sil yürü uyu ağla ara bağır bağla boya büyü çek değiş
dök dön ek gir giy göster götür hazırla izle kaç kazan kır kork koy kullan kur
öde öğren öğret ölç sakla say sus şaşır taşın tanı temizle topla unut uyan
yakala yan yat yaşa yen yık at as çık in çöz dol duy düzelt eğlen getir gönder
hatırla kapat karış kat kız koru oyna öv sür tırman uzat üşü yaşlan yorul yıka
yolla zorla çağır sağla dayan ödüllendir sığ boğ
""".split()

TR_NOUNS = """
ev el göz kız at süt yol gün köy dil baş iş taş kuş diş yüz ay kapı araba masa
oda kedi köpek* çocuk* kitap* ağaç* kalem defter okul çiçek* ekmek* bıçak*
kulak* ayak* yaprak* toprak* bardak* tabak* kaşık* sokak* durak* balık* yemek*
bebek* elbise gömlek* ördek* inek* tavuk* kasap* dolap* mektup* sabun pencere
duvar kapak* anahtar bilgisayar telefon deniz göl dağ bağ yağ orman bahçe tarla
çay kahve şeker tuz peynir zeytin elma armut üzüm portakal limon domates patates
soğan biber bal yumurta et balkon merdiven koltuk* yatak* yastık* halı perde
ayna lamba gazete dergi doktor öğretmen öğrenci arkadaş komşu kardeş anne baba
dede nine amca teyze kuzu koyun keçi fare aslan kaplan ayı kurt tilki yılan
böcek* arı kelebek* gemi uçak* tren otobüs istasyon köprü kule cami kilise
pazar fırın banka hastane mutfak* tavan kat sandalye kutu çanta şapka ceket
ayakkabı çorap* eldiven yüzük* kolye saç dudak* parmak* tırnak* kalp*
""".split()


def tr_verb_paradigm(stem):
    forms = []
    for neg in (False, True):
        base = tr_expand(stem, "mA") if neg else stem
        pol = ";NEG" if neg else ""
        # future
        fut = tr_expand(base, "(y)AcAk")
        for tags, suf in TR_PERSON_Z:
            s = fut
            if suf.startswith("(y)"):
                s = tr_soften(s)
            forms.append((tr_expand(s, suf), "V;IND;FUT;" + tags + pol))
        # past
        pst = tr_expand(base, "DI")
        for tags, suf in TR_PERSON_K:
            forms.append((tr_expand(pst, suf), "V;IND;PST;" + tags + pol))
        # progressive: drop a stem-final vowel, then -Iyor
        prog_base = stem + "m" if neg else stem
        if prog_base[-1] in TR_VOWELS:
            trimmed = prog_base[:-1]
            prog = trimmed + tr_i(trimmed) + "yor"
        else:
            prog = tr_expand(prog_base, "Iyor")
        for tags, suf in TR_PERSON_Z:
            forms.append((tr_expand(prog, suf), "V;IND;PRS;PROG;" + tags + pol))
        # conditional
        cond = tr_expand(base, "sA")
        for tags, suf in TR_PERSON_K:
            forms.append((tr_expand(cond, suf), "V;COND;" + tags + pol))
        # necessitative
        nec = tr_expand(base, "mAlI")
        for tags, suf in TR_PERSON_Z:
            forms.append((tr_expand(nec, suf), "V;OBLIG;" + tags + pol))
    return forms


TR_CASES = [("NOM", ""), ("ACC", "(y)I"), ("DAT", "(y)A"), ("LOC", "DA"),
            ("ABL", "DAn"), ("GEN", "(n)In"), ("INS", "(y)lA")]


def tr_noun_paradigm(entry):
    soft = entry.endswith("*")
    lemma = entry.rstrip("*")
    forms = []
    for case, suf in TR_CASES:
        stem = lemma
        if soft and suf and (suf[0] in "AI" or suf.startswith("(")) and case != "INS":
            stem = tr_soften(lemma)
        forms.append((tr_expand(stem, suf), "N;" + case + ";SG"))
    plural = tr_expand(lemma, "lAr")
    for case, suf in TR_CASES:
        forms.append((tr_expand(plural, suf), "N;" + case + ";PL"))
    return lemma, forms


# ---------------------------------------------------------------- Finnish

FI_GRADATION = [("kk", "k"), ("pp", "p"), ("tt", "t"), ("nt", "nn"),
                ("nk", "ng"), ("mp", "mm"), ("lt", "ll"), ("rt", "rr"),
                ("ht", "hd"), ("lp", "lv"), ("rp", "rv"), ("t", "d"),
                ("p", "v")]
FI_VOWELS = set("aeiouyäö")


def fi_back(word):
    return any(ch in "aou" for ch in word)


def fi_weak(stem):
    """Weak grade of the consonant cluster before the stem-final vowel."""
    body, final = stem[:-1], stem[-1]
    for strong, weak in FI_GRADATION:
        if body.endswith(strong):
            return body[: -len(strong)] + weak + final
    raise ValueError("no gradation for " + stem)


def fi_harm(word, suffix):
    if fi_back(word):
        return suffix
    return suffix.replace("a", "ä").replace("o", "ö").replace("u", "y")


FI_NOUNS = """
talo kello pallo ruoho arvo vero kilo piano auto kirkko* laulu
lintu* katu* hullu hattu* ukko* muru tikku* hylly tyyny pyssy hyppy* sänky*
pöllö tyttö* säilö kala kissa kirja sana silta* kampa* ranta* tapa* pata* kasa
vaja raha maja kana laiva matka pala karva harja herra kerta* ilma virta* hilla
koira kukka* kuva muna sota* tupa* oksa loma kuula pöytä* kylä isä kenttä* lehmä
hätä* seinä kynä leipä* metsä ranko arkku* lakko* mökki? kaappi? poro pappa?
tasku kurkku* rukous? lasku pesä? kaupunki? vihko? rako? kumpu* sampo* vuoto*
lehto* kanto* onki? tunturi? joulu taulu nauha hauta* lusikka? kaista karhu
sauna pulla kulta* aalto* valta* hanko? varpu* salko?
""".split()

FI_CASES_SG = [("NOM", None), ("GEN", "n"), ("PRT", "a"), ("INE", "ssa"),
               ("ELA", "sta"), ("ILL", None), ("ADE", "lla"), ("ABL", "lta"),
               ("ALL", "lle"), ("ESS", "na"), ("TRANS", "ksi")]
FI_WEAK_SG = {"GEN", "INE", "ELA", "ADE", "ABL", "ALL", "TRANS"}
FI_CASES_PL = [("NOM", "t"), ("GEN", "en"), ("PRT", "a"), ("INE", "ssa"),
               ("ELA", "sta"), ("ILL", None), ("ADE", "lla"), ("ABL", "lta"),
               ("ALL", "lle"), ("ESS", "na"), ("TRANS", "ksi")]
FI_WEAK_PL = {"INE", "ELA", "ADE", "ABL", "ALL", "TRANS"}


def fi_noun_paradigm(entry):
    grades = entry.endswith("*")
    lemma = entry.rstrip("*")
    strong = lemma
    weak = fi_weak(lemma) if grades else lemma
    final = lemma[-1]
    first_vowel = next(ch for ch in lemma if ch in FI_VOWELS)
    forms = []
    for case, suf in FI_CASES_SG:
        if case == "NOM":
            form = lemma
        elif case == "ILL":
            form = strong + final + "n"
        else:
            stem = weak if case in FI_WEAK_SG else strong
            form = stem + fi_harm(lemma, suf)
        forms.append((form, "N;" + case + ";SG"))

    def plural_stem(stem):
        if final in "aä":
            if final == "a" and first_vowel in "aei":
                return stem[:-1] + "oi"
            return stem[:-1] + "i"
        return stem + "i"

    for case, suf in FI_CASES_PL:
        if case == "NOM":
            forms.append((weak + "t", "N;NOM;PL"))
            continue
        stem = plural_stem(weak if case in FI_WEAK_PL else strong)
        after_consonant = stem[-2] not in FI_VOWELS
        if case == "ILL":
            form = stem + ("in" if after_consonant else "hin")
        else:
            s = fi_harm(lemma, suf)
            if s[0] in FI_VOWELS and not after_consonant:
                form = stem[:-1] + "j" + s
            else:
                form = stem + s
        forms.append((form, "N;" + case + ";PL"))
    return lemma, forms


FI_VERBS = """
puhua sanoa istua asua kysyä nukkua* katsoa kaatua* uskoa toivoa pysyä
syntyä* muuttua* tuntua* luopua* riippua* saapua* kuulua tottua* suuttua*
tutustua valmistua ilmestyä esiintyä* kehittyä* jäätyä* unohtua* johtua*
sopeutua* loukkaantua* innostua väsyä myöhästyä ahdistua rauhoittua*
keskittyä* hermostua pettyä* yllättyä* kyllästyä rakastua vakuuttua* kuivua
kastua ampua* kumartua* kääntyä* avautua* jatkua muodostua onnistua
osallistua katua* maistua sijoittua* liittyä* ryhtyä* tarttua* pelastua
kiinnostua huolestua tyytyä* kuntoutua* ilahtua* lämmetä? vapautua* eksyä
hukkua* upota? sortua* kohentua* vaikeutua* laajentua* supistua
""".split()


def fi_verb_paradigm(entry):
    grades = entry.endswith("*")
    lemma = entry.rstrip("*")
    stem = lemma[:-1]
    weak = fi_weak(stem) if grades else stem
    back = fi_back(lemma)
    h = (lambda s: s) if back else (lambda s: s.replace("a", "ä").replace("o", "ö").replace("u", "y"))
    v = stem[-1]
    forms = [(lemma, "V;NFIN")]
    prs = [("1;SG", weak + "n"), ("2;SG", weak + "t"), ("3;SG", stem + v),
           ("1;PL", weak + "mme"), ("2;PL", weak + "tte"), ("3;PL", stem + h("vat"))]
    pst = [("1;SG", weak + "in"), ("2;SG", weak + "it"), ("3;SG", stem + "i"),
           ("1;PL", weak + "imme"), ("2;PL", weak + "itte"), ("3;PL", stem + h("ivat"))]
    cond = [("1;SG", stem + "isin"), ("2;SG", stem + "isit"), ("3;SG", stem + "isi"),
            ("1;PL", stem + "isimme"), ("2;PL", stem + "isitte"), ("3;PL", stem + h("isivat"))]
    for tags, form in prs:
        forms.append((form, "V;IND;PRS;" + tags))
    for tags, form in pst:
        forms.append((form, "V;IND;PST;" + tags))
    for tags, form in cond:
        forms.append((form, "V;COND;PRS;" + tags))
    forms.append((weak, "V;IMP;2;SG"))
    forms.append((stem + h("kaa"), "V;IMP;2;PL"))
    forms.append((weak + h("taan"), "V;IND;PRS;PASS"))
    forms.append((weak + "ttiin", "V;IND;PST;PASS"))
    return lemma, forms


# ---------------------------------------------------------------- Georgian

KA_NOUNS = """
სახლი წიგნი კაცი ძაღლი ბავშვი ქალი ქალაქი პური ცხენი ფული თვალი ხელი ფეხი
გული სკამი კარი თევზი ჩიტი ცხვარი ვაშლი ყვავილი ბალახი ცეცხლი ქარი თოვლი
წელი საათი ბოთლი კოვზი თეფში ქუდი პერანგი ოთახი სართული ბაღი ხილი ყველი
კვერცხი ხორცი თაფლი შაქარი მარილი შვილი ექიმი ხალხი ხიდი ნავი გემი
ჟურნალი გაზეთი ბანკი ბაზარი ფანქარი კალამი ქაღალდი სურათი ფერი სახელი
ჰაერი ჯარი ჭადრაკი წვერი ღორი ყური ცხვირი კბილი ტანი მხარი ჯიხური
დედა მამა მთა სკოლა ენა სიტყვა მაგიდა ზღვა ქუჩა გზა მანქანა კატა ძროხა
ქვა მიწა წვიმა კვირა სიმღერა ცეკვა სუფრა ჭიქა დანა ყავა ძმა ფოსტა ხმა
თმა ტბა ტყე ხე მზე ღამე დღე თვე რძე მეფე ჯიბე ციხე მოსწავლე მდინარე
მთვარე ჟირაფი ჰავა
""".split()


def ka_noun_paradigm(nom):
    if nom.endswith("ი"):
        stem, kind = nom[:-1], "C"
    elif nom.endswith("ა"):
        stem, kind = nom, "A"
    else:
        stem, kind = nom, "E"
    forms = []

    def cons_cases(s):
        return [(s + "ი", "NOM"), (s + "მა", "ERG"), (s + "ს", "DAT"),
                (s + "ის", "GEN"), (s + "ით", "INS"), (s + "ად", "ADV"),
                (s + "ო", "VOC")]

    if kind == "C":
        sg = cons_cases(stem)
    else:
        trunc = stem[:-1]
        sg = [(stem, "NOM"), (stem + "მ", "ERG"), (stem + "ს", "DAT"),
              (trunc + "ის", "GEN"), (trunc + "ით", "INS"), (stem + "დ", "ADV"),
              (stem + "ვ", "VOC")]
    plural_stem = (stem[:-1] if kind == "A" else stem) + "ებ"
    pl = cons_cases(plural_stem)
    for form, case in sg:
        forms.append((form, "N;" + case + ";SG"))
    for form, case in pl:
        forms.append((form, "N;" + case + ";PL"))
    return nom, forms


# ---------------------------------------------------------------- output


def clean(entries):
    # `?` marks lemmas left out (irregular or unsure paradigm)
    return [e for e in entries if not e.endswith("?")]


def write(path, rows):
    with open(path, "w", encoding="utf-8") as f:
        for lemma, form, tags in rows:
            f.write(f"{lemma}\t{form}\t{tags}\n")


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "data/unimorph"
    os.makedirs(out_dir, exist_ok=True)

    rows = []
    for stem in dict.fromkeys(TR_VERBS):
        lemma = tr_expand(stem, "mAk")
        rows += [(lemma, f, t) for f, t in tr_verb_paradigm(stem)]
    for entry in dict.fromkeys(TR_NOUNS):
        lemma, forms = tr_noun_paradigm(entry)
        rows += [(lemma, f, t) for f, t in forms]
    write(os.path.join(out_dir, "tr.tsv"), rows)

    rows = []
    for entry in dict.fromkeys(clean(FI_NOUNS)):
        lemma, forms = fi_noun_paradigm(entry)
        rows += [(lemma, f, t) for f, t in forms]
    for entry in dict.fromkeys(clean(FI_VERBS)):
        lemma, forms = fi_verb_paradigm(entry)
        rows += [(lemma, f, t) for f, t in forms]
    write(os.path.join(out_dir, "fi.tsv"), rows)

    rows = []
    for nom in dict.fromkeys(KA_NOUNS):
        lemma, forms = ka_noun_paradigm(nom)
        rows += [(lemma, f, t) for f, t in forms]
    write(os.path.join(out_dir, "ka.tsv"), rows)


if __name__ == "__main__":
    main()
