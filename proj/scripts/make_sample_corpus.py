#!/usr/bin/env python3
"""Regenerates data/reviews.jsonl, the bundled restaurant-review corpus.

Synthetic but shaped like the real thing: two balanced sentiment classes,
sentiment carried mostly by adjectives/verbs with 15% label noise, a long
tail of rare dish and venue nouns (plus a few one-off words that fall below
the vocabulary min-count), coarse part-of-speech tags on three quarters of
the documents, and a quarter of the documents shipped as raw text only so
the loader's tokenizer path gets real use. Deterministic: rerunning this
script reproduces the file byte for byte.
"""

import json
import random

SEED = 20240817
N_DOCS = 1100
TAGGED_FRACTION = 0.75
LABEL_CONSISTENCY = 0.85
RARE_NOUN_RATE = 0.35

POS_ADJ = ["good", "great", "fresh", "tasty", "delicious", "friendly", "quick",
           "cozy", "perfect", "lovely", "crisp", "generous", "warm", "attentive",
           "favorite", "prepared", "bright", "charming", "balanced", "tender",
           "smooth", "hearty", "vibrant", "spotless"]
NEG_ADJ = ["bad", "stale", "bland", "rude", "slow", "greasy", "cold", "noisy",
           "dirty", "soggy", "overpriced", "tiny", "dry", "awful", "forgettable",
           "crowded", "bitter", "sour", "chaotic", "cramped", "watery", "burnt",
           "messy", "sloppy"]
POS_VERB = ["loved", "enjoyed", "recommend", "returned", "praised", "liked",
            "savored", "admired"]
NEG_VERB = ["hated", "avoid", "waited", "complained", "regretted", "disliked",
            "struggled", "left"]
NEUTRAL_VERB = ["was", "were", "came", "arrived", "tasted", "felt", "looked",
                "seemed", "ordered", "tried", "can", "be", "sat", "stopped"]
COMMON_NOUNS = ["food", "service", "pizza", "pasta", "coffee", "staff", "menu",
                "sauce", "seating", "place", "table", "dinner", "lunch",
                "dessert", "bread", "soup", "salad", "drinks", "park", "patio",
                "portion", "flavor", "crust", "cheese", "waiter", "evening",
                "visit", "corner", "street", "kitchen", "brunch", "host",
                "counter", "booth", "plate", "bowl"]
RARE_NOUNS = ["tiramisu", "gnocchi", "risotto", "espresso", "croissant",
              "baguette", "hummus", "falafel", "tacos", "burrito", "ramen",
              "udon", "sushi", "tempura", "dumplings", "wontons", "curry",
              "naan", "paella", "sangria", "mojito", "latte", "cappuccino",
              "macchiato", "scone", "muffin", "bagel", "pancakes", "waffles",
              "omelette", "quiche", "crepes", "cider", "stout", "lager",
              "porter", "merlot", "riesling", "prosecco", "gazpacho",
              "chowder", "bisque", "gumbo", "jambalaya", "brisket", "ribs",
              "meatloaf", "schnitzel", "goulash", "pierogi", "borscht",
              "kimchi", "bibimbap", "pho", "satay", "laksa", "ceviche",
              "empanadas", "arepas", "churros", "flan", "gelato", "sorbet",
              "parfait", "pudding", "brownie", "cheesecake", "strudel",
              "baklava", "custard", "truffle", "ganache", "focaccia",
              "ciabatta", "sourdough", "pretzel", "pastrami", "prosciutto",
              "salami", "chorizo", "halloumi", "feta", "brie", "gouda",
              "cheddar", "parmesan", "mozzarella", "burrata", "arugula",
              "kale", "quinoa", "couscous", "polenta", "orzo", "farro",
              "barley", "lentils", "chickpeas", "edamame", "guacamole",
              "salsa", "pesto", "aioli", "tzatziki", "harissa", "sriracha",
              "wasabi", "ginger", "turmeric", "saffron", "rosemary", "thyme",
              "basil", "cilantro", "oregano", "anchovies", "sardines",
              "mackerel", "halibut", "snapper", "trout", "scallops",
              "oysters", "mussels", "clams", "calamari", "octopus", "lobster",
              "crab", "shrimp", "veranda", "courtyard", "terrace", "rooftop",
              "mezzanine", "alcove", "banquette", "jukebox", "fireplace",
              "chandelier", "mural", "awning"]
HAPAX_NOUNS = ["quenelle", "sillabub", "cassoulet", "vacherin", "financier",
               "madeleine", "pithivier", "garganelli", "strozzapreti",
               "culurgiones", "malloreddus", "panisse", "socca", "farinata",
               "esquites", "tlayuda", "tostones", "mofongo", "acaraje",
               "kringle"]
ADVERBS = ["really", "very", "always", "never", "quite", "even", "too", "so",
           "definitely", "barely", "again", "still", "honestly", "truly",
           "fairly", "rather"]
DETERMINERS = ["the", "a", "this", "that", "our", "their", "every", "each"]
ADPOSITIONS = ["in", "on", "at", "with", "for", "of", "to", "near", "by",
               "from"]
PRONOUNS = ["we", "i", "you", "they", "it"]
CONJUNCTIONS = ["and", "but", "or"]
CONTRACTIONS = ["it's", "don't", "wasn't", "that's", "weren't"]


def main():
    rng = random.Random(SEED)

    def adj(label):
        pool = (POS_ADJ, NEG_ADJ) if label == 1 else (NEG_ADJ, POS_ADJ)
        chosen = pool[0] if rng.random() < LABEL_CONSISTENCY else pool[1]
        return rng.choice(chosen), "ADJ"

    def verb(label, signal):
        if signal:
            pool = (POS_VERB, NEG_VERB) if label == 1 else (NEG_VERB, POS_VERB)
            chosen = pool[0] if rng.random() < LABEL_CONSISTENCY else pool[1]
            return rng.choice(chosen), "VERB"
        return rng.choice(NEUTRAL_VERB), "VERB"

    def noun():
        pool = RARE_NOUNS if rng.random() < RARE_NOUN_RATE else COMMON_NOUNS
        return rng.choice(pool), "NOUN"

    def det():
        return rng.choice(DETERMINERS), "DET"

    def adv():
        return rng.choice(ADVERBS), "ADV"

    def adp():
        return rng.choice(ADPOSITIONS), "ADP"

    def pron():
        return rng.choice(PRONOUNS), "PRON"

    def conj():
        return rng.choice(CONJUNCTIONS), "CCONJ"

    def end():
        return rng.choice([".", ".", ".", "!"]), "PUNCT"

    def sentence(label):
        kind = rng.randrange(6)
        if kind == 0:
            parts = [det(), noun(), verb(label, False), adv(), adj(label), end()]
        elif kind == 1:
            parts = [pron(), verb(label, True), det(), adj(label), noun(), end()]
        elif kind == 2:
            parts = [det(), noun(), adp(), det(), noun(), verb(label, False),
                     adj(label), end()]
        elif kind == 3:
            parts = [pron(), adv(), verb(label, True), det(), noun(), end()]
        elif kind == 4:
            parts = [(rng.choice(CONTRACTIONS), "OTHER"), det(), adj(label),
                     noun(), adp(), det(), noun(), end()]
        else:
            parts = [pron(), verb(label, False), adp(), det(), noun(), conj(),
                     verb(label, True), det(), noun(), end()]
        return parts

    def render_text(tagged):
        words = []
        start_of_sentence = True
        for token, tag in tagged:
            shown = token
            if start_of_sentence and tag != "PUNCT":
                shown = token[0].upper() + token[1:]
                start_of_sentence = False
            if tag == "PUNCT":
                words[-1] += shown
                start_of_sentence = True
            else:
                words.append(shown)
        return " ".join(words)

    docs = []
    for i in range(N_DOCS):
        label = i % 2
        tagged = []
        for _ in range(rng.randint(2, 4)):
            tagged.extend(sentence(label))
        while len(tagged) < 12:
            tagged.extend(sentence(label))
        docs.append((label, tagged))

    # One-off dish mentions: each appears exactly once corpus-wide, landing
    # below the default vocabulary min-count.
    slots = rng.sample(range(N_DOCS), len(HAPAX_NOUNS))
    for word, slot in zip(HAPAX_NOUNS, slots):
        label, tagged = docs[slot]
        extra = [det(), (word, "NOUN"), verb(label, False), adv(), adj(label),
                 end()]
        tagged.extend(extra)

    records = []
    for i, (label, tagged) in enumerate(docs):
        doc = {"id": f"r{i:04d}", "text": render_text(tagged), "label": label}
        if rng.random() < TAGGED_FRACTION:
            doc["tokens"] = [t for t, _ in tagged]
            doc["pos"] = [p for _, p in tagged]
        records.append(doc)

    rng.shuffle(records)
    with open("data/reviews.jsonl", "w") as out:
        for doc in records:
            out.write(json.dumps(doc, sort_keys=True) + "\n")
    print(f"wrote {len(records)} documents")


if __name__ == "__main__":
    main()
