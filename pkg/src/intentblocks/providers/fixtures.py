"""Canned mock-provider replies for known inputs, plus the fallback word list.

Each table maps a normalized lookup key to the raw reply the mock returns.
Unknown inputs fall back to hash-derived synthesis in the mock provider.
"""

from __future__ import annotations

PROPERTY_FIXTURES: dict[str, list[dict]] = {
    "A professional mascot character for a laboratory": [
        {"property_name": "Mascot's Entity", "property_type": "text"},
        {"property_name": "Mascot's Pose", "property_type": "text"},
        {"property_name": "Character Aesthetics", "property_type": "text"},
        {"property_name": "Laboratory Setting", "property_type": "text"},
        {"property_name": "Image Style", "property_type": "image"},
        {"property_name": "Mascot's Clothing", "property_type": "text"},
        {"property_name": "Field of Expertise of the Lab", "property_type": "text"},
        {"property_name": "Safety Gear", "property_type": "text"},
    ],
    "An illustration for a child book cover with a friendly monster": [
        {"property_name": "World's Landscape", "property_type": "text"},
        {"property_name": "Color Palette", "property_type": "image"},
        {"property_name": "Unusual Structures", "property_type": "text"},
        {"property_name": "Lighting Effects", "property_type": "image"},
        {"property_name": "Atmosphere", "property_type": "text"},
        {"property_name": "Image Style", "property_type": "image"},
        {"property_name": "Fantasy Creatures", "property_type": "text"},
        {"property_name": "Architectural Features", "property_type": "text"},
    ],
    "A drawing of a surreal worlds with fantasy mood": [
        {"property_name": "Monster's Appearance", "property_type": "text"},
        {"property_name": "Color Palette", "property_type": "image"},
        {"property_name": "Monster's Facial Expression", "property_type": "text"},
        {"property_name": "Background Setting", "property_type": "text"},
        {"property_name": "Image Style", "property_type": "image"},
        {"property_name": "Typography", "property_type": "text"},
        {"property_name": "Symbolic Expression of Monster", "property_type": "text"},
        {"property_name": "Child Character", "property_type": "text"},
    ],
}

# Keyed by (property name, direction).
DIVERSIFY_TEXT_FIXTURES: dict[tuple[str, str], list[str]] = {
    ("Mascot Species", "Cat"): [
        "Sphynx", "Persian", "Siamese", "Bengal",
        "Dog", "Parrot", "Dragon", "Kangaroo", "Turtle",
    ],
    ("Dragon Wings", "Elemental (Fire)"): [
        "Lava", "Blaze", "Inferno", "Ember",
        "Crystal", "Feathered", "Mechanical", "Insect", "Bat",
    ],
    ("Mascot Attire", "Hippie"): [
        "Bohemian", "Tie-Dye", "Flower Child", "Vintage 70s",
        "Formal", "Sporty", "Steampunk", "Futuristic", "Pirate",
    ],
    ("Building Facade", "Cyberpunk"): [
        "Neon-lit", "High-tech", "Dystopian", "Industrial",
        "Victorian", "Art Deco", "Organic", "Mediterranean", "Minimalist",
    ],
}

DIVERSIFY_IMAGE_FIXTURES: dict[tuple[str, str], list[str]] = {
    ("Color Scheme", "Pastel"): [
        "Soft Pastel", "Muted Pastel", "Bright Pastel", "Earthy Pastel",
        "Neon", "Monochrome", "Earth Tones", "Primary Colors", "High Contrast",
    ],
    ("Image Style", "Vintage"): [
        "Retro Vintage", "Classic Vintage", "Industrial Vintage", "Rustic Vintage",
        "Minimalist", "Surreal", "Futuristic", "Abstract", "Pop Art",
    ],
}

# Keyed by (property name, direction).
CANDIDATES_TEXT_FIXTURES: dict[tuple[str, str], list[str]] = {
    ("Dragon Wings", "Elemental (Fire)"): [
        "Blazing Flame Trails", "Lava-Inspired Ripples",
        "Ember Flicker Patterns", "Inferno Edge Design",
        "Fiery Vein Details", "Volcanic Glow Highlights",
        "Scorch-Inspired Textures", "Searing Heat Streaks",
        "Crimson Spark Traces", "Radiant Flame Outlines",
    ],
    ("Mascot Attire", "Hippie"): [
        "Tie-Dye Shirt", "Fringed Vest",
        "Flower Crown", "Peace Sign Necklace",
        "Patchwork Pants", "Crochet Hat",
        "Beaded Accessories", "Round Glasses",
        "Sandals with Beads", "Embroidered Jacket",
    ],
    ("Building Facade", "Cyberpunk"): [
        "Neon Grid Patterns", "Holographic Advertisements",
        "LED Matrix Panels", "Translucent Digital Displays",
        "Pulsating Light Strips", "Reflective Metal Surfaces",
        "Augmented Reality Facades", "Fluorescent Tube Designs",
        "Virtual Banner Walls", "Laser-Cut Glass Sections",
    ],
}

# Keyed by (tuple of (id, direction) previous logs, new direction).
_ANIMAL_LOGS = (
    ("1", "animal"),
    ("2", "magical animal"),
    ("3", "flying magical animal"),
    ("4", "sea creatures"),
)
ORGANIZE_HISTORY_FIXTURES: dict[tuple[tuple[tuple[str, str], ...], str], str | None] = {
    ((("1", "hippie attires"), ("2", "classic attires")), "student's attires"): "2",
    ((("1", "avant-garde art"), ("2", "futuristic design")), "medieval architecture"): None,
    (_ANIMAL_LOGS, "deep sea creatures"): "4",
    (_ANIMAL_LOGS, "unicorn"): "2",
    (_ANIMAL_LOGS, "dragon"): "3",
    (_ANIMAL_LOGS, "mammal"): "1",
    (_ANIMAL_LOGS, "robot"): None,
}


def _steps(*triples) -> list[dict]:
    return [
        {"id": i, "property": p, "direction": d, "novelty": n}
        for (i, p, d, n) in triples
    ]


# Keyed by (topic, tuple of (id, direction) of the replication path).
ADAPTIVE_PATH_FIXTURES: dict[tuple[str, tuple[tuple[str, str], ...]], list[list[dict]]] = {
    (
        "A professional character for a laboratory",
        (("2", "Computer"), ("3", "professional blue")),
    ): [
        _steps(("2", "Laboratory Setting", "Tech-savvy computer lab", 3),
               ("3", "Color Scheme", "Professional Blue", 1)),
        _steps(("2", "Laboratory Setting", "Friendly computer workspace", 3),
               ("3", "Color Scheme", "Cool Blue with Silver", 2)),
        _steps(("2", "Laboratory Setting", "Zoo Laboratory", 3),
               ("3", "Color Scheme", "Green and Wood", 2)),
    ],
    (
        "A lovely animal character for a sports team",
        (("5", "Pop Art"), ("9", "stadium"), ("9_copy", "training")),
    ): [
        _steps(("5", "Image Style", "Colorful Pop Art", 3),
               ("9", "Background or Setting", "Vibrant Stadium", 4),
               ("9_copy", "Background or Setting", "Training Camp", 5)),
        _steps(("5", "Image Style", "Retro Pop Art", 3),
               ("9", "Background or Setting", "Basketball Arena", 4),
               ("9_copy", "Background or Setting", "Gym", 5)),
        _steps(("5", "Image Style", "Sporty Pop Art", 3),
               ("9", "Background or Setting", "Basketball Field", 4),
               ("9_copy", "Background or Setting", "Basketball training", 5)),
    ],
    (
        "An illustration for a child book cover with a friendly monster",
        (
            ("7", "sticking out the tongue"),
            ("8", "fantasy playground"),
            ("11", "floating islands"),
            ("12", "Small smiling kid"),
        ),
    ): [
        _steps(("7", "Friendly Expression", "Cheerful Tongue Out", 2),
               ("8", "Background Setting", "Whimsical Playground", 3),
               ("11", "Background Setting", "Floating Island Adventure", 2),
               ("12", "Child Character", "Joyful Child", 1)),
        _steps(("7", "Friendly Expression", "Playful Tongue Out", 2),
               ("8", "Background Setting", "Mysterious Playground", 3),
               ("11", "Background Setting", "Mystical Floating Lands", 3),
               ("12", "Child Character", "Curious Kid", 1)),
        _steps(("7", "Friendly Expression", "Goofy grin with tongue out", 2),
               ("8", "Background Setting", "Mysterious Playground", 3),
               ("11", "Background Setting", "Enchanted Forest", 3),
               ("12", "Child Character", "Scared Child", 1)),
    ],
    (
        "A scene of surreal worlds with fantasy mood",
        (("5", "Vibrant"), ("8", "Floating towers"), ("9", "crystal palace")),
    ): [
        _steps(("5", "Color & Texture", "Vibrant with Luminous Highlights", 3),
               ("8", "Surreal Architecture", "Floating Towers", 3),
               ("9", "Surreal Architecture", "Crystalline Palace", 2)),
        _steps(("5", "Color & Texture", "Vivid and Textured", 3),
               ("8", "Surreal Architecture", "Floating Coral Towers", 3),
               ("9", "Surreal Architecture", "Crystal Oasis Palace", 2)),
        _steps(("5", "Color & Texture", "Vibrant Neon Green", 3),
               ("8", "Surreal Architecture", "Mystical Floating Towers", 3),
               ("9", "Surreal Architecture", "Water Palace", 2)),
    ],
    (
        "A futuristic mascot for an AI startup",
        (
            ("43", "Watercolor illustration"),
            ("46", "friendly"),
            ("49", "working"),
            ("47", "outdoor"),
        ),
    ): [
        _steps(("43", "Image Style", "Digital Watercolor with Geometric Patterns", 2),
               ("46", "Mascot's Pose", "Friendly and Inviting", 2),
               ("49", "Mascot's Pose", "Engaged in Task", 4),
               ("47", "Background or Setting", "Virtual Outdoor Space", 3)),
        _steps(("43", "Image Style", "Minimalist Watercolor", 2),
               ("46", "Mascot's Pose", "Welcoming Gesture", 2),
               ("49", "Mascot's Pose", "Collaborative Stance", 4),
               ("47", "Background or Setting", "Futuristic Outdoor Scene", 3)),
        _steps(("43", "Image Style", "Evocative Watercolor", 2),
               ("46", "Mascot's Pose", "Expressively Friendly", 2),
               ("49", "Mascot's Pose", "Dynamic and Focused", 4),
               ("47", "Background or Setting", "Cybernetic Outdoor Setting", 3)),
    ],
}

# Keyed by (topic, property, history tuple, settings tuple).
RECOMMEND_FIXTURES: dict[tuple, dict] = {
    (
        "A professional character for a laboratory",
        "Image Style",
        (),
        ("Character Entity: Robot",),
    ): {"typical": "Realistic", "unique": "Steampunk"},
    (
        "A lovely animal character for a baseball team",
        "Character Pose",
        ("Baseball-related pose",),
        ("Character Entity: Fluffy animal", "Team Color: Blue"),
    ): {"typical": "Ball-related", "unique": "Cheerleading"},
    (
        "An illustration for a child book cover with a friendly monster",
        "Illustration Style",
        ("Minimalistic", "Line drawing"),
        ("Monster's Appearance: Fluffy and Circular shape",),
    ): {"typical": "Watercolor", "unique": "Retro cartoon"},
    (
        "A scene of surreal worlds with fantasy mood",
        "Surreal Architecture",
        (),
        ("Environmental Elements: Floating Islands", "Color & Texture: Pastel"),
    ): {"typical": "Twisting buildings", "unique": "Giant seashell"},
}

# Fallback vocabulary for hash-derived synthesis; order matters for sampling.
VOCAB = (
    "amber", "angular", "arcade", "aurora", "bamboo", "basalt", "breezy", "bronze",
    "canvas", "celadon", "chalk", "cinder", "cobalt", "copper", "coral", "crimson",
    "crystal", "dappled", "drift", "dusky", "ebony", "ember", "emerald", "fable",
    "feathered", "fjord", "flannel", "fresco", "frosted", "gilded", "gingham",
    "glacial", "gossamer", "granite", "harbor", "hazel", "indigo", "ivory", "jade",
    "juniper", "lacquer", "lantern", "lichen", "linen", "lunar", "marble", "meadow",
    "mesa", "midnight", "mineral", "mistral", "mosaic", "moss", "nebula", "nectar",
    "obsidian", "ochre", "onyx", "opal", "orchid", "pebble", "pewter", "pine",
    "plume", "prairie", "prism", "quartz", "quill", "raven", "russet", "saffron",
    "sable", "sandstone", "sepia", "sienna", "silver", "slate", "sorrel", "spruce",
    "starlit", "stucco", "tawny", "terra", "thistle", "tidal", "topaz", "tundra",
    "umber", "velvet", "verdant", "violet", "walnut", "willow", "woven", "zephyr",
)
