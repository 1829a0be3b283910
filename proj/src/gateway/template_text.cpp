#include "memguard/gateway/template_text.hpp"
namespace memguard {
const char* const kTemplateText_extraction = R"MEMGUARD_RAW(You are an expert knowledge extraction, relationship analysis, and routing system. Your job is to:
1. Decompose composite statements only where different knowledge types are implied; preserve co-purposeful actions as one entry.
2. Extract each fact as a separate knowledge entry, keeping all specific objects and entities intact.
3. Identify relationships between knowledge entries.
4. Route each entry to the correct memory type.

### CONTEXT
Conversation Timestamp: {{conversation_timestamp}}

New Messages:
{{messages}}

---

### PHASE 1: EXTRACT
Scan the conversation for every useful piece of knowledge. Prefer over-extraction - a missed fact cannot be recovered; a redundant one is resolved later.

**What to extract** (capture all that apply):
- Identity & demographics: name, age, occupation, location, education, background
- Personality & traits: self-described style, emotional patterns, decision tendencies, communication style
- Preferences & tastes: food, entertainment, tech tools, travel, aesthetics, communication channels
- Values & beliefs: ethical principles, priorities, worldview, attitudes toward money/work/life
- Goals & plans: short-term tasks, long-term ambitions, learning objectives, financial/health goals
- Constraints & challenges: budget limits, active problems, fears, non-negotiables, frustrations
- Social relationships: family, partner, friends, colleagues, pets - with names and key facts
- Health & wellbeing: conditions, medications, allergies, exercise habits, diet, sleep
- Possessions & resources: devices, vehicles, subscriptions, financial resources, creative tools
- Skills & expertise: professional skills, years of experience, languages, areas actively learning
- Projects & work: active projects (name, goal, status, collaborators), responsibilities, affiliations
- Routines & habits: recurring daily/weekly behaviors, work habits, financial habits, creative habits
- Commitments & obligations: promises to named people, appointments with dates, ongoing duties
- Life events: past/future occurrences, milestones, first-time experiences, reactions
- Opinions & evaluations: ratings, recommendations, positive/negative/mixed reactions to products/people
- Emotional states & reactions: expressed feelings tied to specific events or situations; emotional tone toward named people or places; significant emotional turning points volunteered by the speaker
- Current life situation: life phase, recent major transitions, environmental/seasonal context
- Domain knowledge: custom vocabulary, frameworks, named systems or tools they personally built

**Decomposition - split composite statements before extracting:**
Scan every statement for facts that belong to different memory types bundled together. Split only when types diverge; keep co-purposeful actions together.

| Split trigger | How to split |
|---|---|
| Past event + derived stable belief or trait | Episodic entry for the event; semantic entry for the belief |
| Occurrence + timeless motivational/emotional explanation | Separate entry for the occurrence; separate entry for the stable motivation |
| Stable preference + the one-time event that revealed it | Episodic for the event; semantic for the preference |
| Two or more subjects sharing one predicate | One entry per subject |

**Do NOT split when:**
- Multiple actions share the same subject, context, and type (e.g., "will do A and B for C" -> one entry)
- Multiple reasons/effects all belong to the same type -> merge into one entry

Example - *"Melanie painted a lake sunrise last year and finds painting a fun way to express herself, get creative, and relax."*
-> atom 0: Melanie painted a lake sunrise (time-anchored occurrence)
-> atom 1: Melanie uses painting to express herself, get creative, and relax (stable multi-purpose belief - kept together since all purposes are semantic)

Counter-example - *"I'm going to launch a website and run ads for my limited edition hoodie line."*
-> ONE episodic entry (same type, same subject, same context - do not split)

**What to skip:**
- Common public knowledge (e.g. "Python is a programming language", "Paris is in France")
- Unverified inferences - extract only what is explicitly stated or clearly implied by the speaker

**Completeness rules:**
- Never omit named objects, products, places, quantities, or people from an entry
- Preserve exact names, numbers, dates, units, and quoted phrases
- Never bundle a time-anchored event and the stable belief it implies in one entry
- Never mix information about different people in the same entry
- If uncertain or ambiguous, set "uncertain": true

**Time normalization:**
- `time` records when the event actually occurred (YYYY-MM-DD, YYYY-MM, or YYYY) - NOT the conversation timestamp
- Resolve relative expressions ("next month", "last year") to absolute dates using the Conversation Timestamp
- In `details`, include both the resolved event time and the conversation timestamp so the entry is fully self-contained.
  - Format: `<resolved_time>: <fact> (mentioned on <conversation_timestamp>)`
  - Example: conversation timestamp 2022-03-27, speaker says "I've been playing drums for a month":
      -> resolved event start: 2022-02
      -> `time`: "2022-02"
      -> `details`: "John has been playing drums for a month (mentioned on 2022-03-27); he described it as tough but fun."
- If the day-of-week is needed but not known (e.g. "last weekend", "this Monday", "next Friday"), keep the expression as-is and note the conversation timestamp
  - Example: "last weekend" when day-of-week for 2023-07-05 is unknown -> `time`: "last weekend before 2023-07-05", `details`: "<fact> (mentioned on 2023-07-05)".
- If no time is mentioned, use the Conversation Timestamp for `time`

---

### PHASE 2: RELATE
Identify meaningful relationships between extracted facts. Link facts that are explicitly connected in the conversation and that can be implicitly inferred in the conversation.

Use exactly these relation labels:

| Label        | Meaning                                                             |
|---|---|
| `supports`   | source supports, evidences, or is required by / informed by target  |
| `instance_of`| source is a concrete occurrence of the target concept               |
| `derived_from` | source stable fact was concluded from or triggered by target experience |
| `leads_to`   | source event directly caused or led to target event                 |
| `context_for`| source provides background or context for target                    |
| `elaborates` | source adds detail or specificity to target                         |
| `contradicts`| source conflicts with or updates target                             |

Rules:
- Each link is directional: source -> target follows the relation's meaning
- One atom may appear in multiple links
- If no relationships exist, output "links": []

---

### PHASE 3: ROUTE
Assign exactly one type to every extracted atom:

- **semantic**: timeless and stable facts about a person or a world
- **episodic**: time-anchored past/future events or experiences 
- **procedural**: recurring behaviors or routines 

**Guardrails:**
- Past, long-time ago experience is anchored to time -> episodic, NOT semantic
- A one-time description of how to do something -> episodic, NOT procedural
- Procedural is ONLY for behaviors the person performs on a recurring basis

---

### OUTPUT FORMAT
Return a single JSON object:

{
  "atoms": [
    {
      "id": 0,
      "type": "semantic" | "episodic" | "procedural",
      "title": "Short label (<=10 words)",
      "details": "Full details including resolved event time and conversation timestamp where applicable",
      "time": "YYYY-MM-DD|YYYY-MM|YYYY",
      "uncertain": true|false
    }
  ],
  "links": [
    {
      "source": 0,
      "target": 1,
      "relation": "<relation_label>",
      "reasoning": "<one sentence grounded in the conversation>"
    }
  ]
}

### CRITICAL RULES:
1. Return ONLY the JSON object; no preamble, explanation, or trailing text
2. Every extracted fact must appear as exactly one atom
3. Atom IDs must be 0-based consecutive integers matching their position in the array
4. Never omit named objects, places, or entities that appear in the source text
5. "title" must be unique and self-explanatory without surrounding context
)MEMGUARD_RAW";
const char* const kTemplateText_operation_assignment = R"MEMGUARD_RAW(You are a memory operation assignment system. Compare newly extracted memory atoms against existing stored memories and decide what to do with each atom.

### CONTEXT
Conversation Timestamp: {{conversation_timestamp}}

Existing Semantic Memories (compare ONLY for semantic atoms):
{{existing_semantic_memories}}

Existing Episodic Memories (compare ONLY for episodic atoms):
{{existing_episodic_memories}}

Existing Procedural Memories (compare ONLY for procedural atoms):
{{existing_procedural_memories}}

New Memory Atoms:
{{atoms_json}}

---

### PHASE 4: ASSIGN OPERATIONS
For every atom, compare it against existing memories OF THE SAME TYPE and assign exactly one action:

- **ADD**: No existing memory covers this fact. Create a new entry.
- **UPDATE**: An existing memory partially covers this fact AND the new information meaningfully extends or corrects it (adds specificity, fixes an error, updates a changed value). Include `old_memory_id`.
- **SKIP**: The fact is already fully captured by an existing memory. Include `existing_id` (the ID of the overlapping memory). The `existing_id` becomes the identity of this atom for Phase 5 - a SKIPped atom is not stored as a new memory, so its `existing_id` must be used whenever it appears as a link endpoint.

When in doubt between ADD and UPDATE, prefer ADD to avoid overwriting valid historical context.

Compare:
- semantic atoms -> against existing_semantic_memories
- episodic atoms -> against existing_episodic_memories
- procedural atoms -> against existing_procedural_memories

---

### PHASE 5: EXISTING LINKS
Links between new atoms were already captured in Phase 2 (RELATE). This phase handles only **links that cross the boundary between new and existing memories**.

Identify relationships where one endpoint is a new ADD/UPDATE atom and the other is an existing stored memory. This covers:
- A new ADD/UPDATE atom that elaborates, contradicts, or provides context for an existing memory
- A SKIPped atom whose `existing_id` is meaningfully connected to another ADD/UPDATE atom - use the SKIP's `existing_id` as the endpoint, not the atom index

**Do NOT create links where both endpoints are new atoms** - those belong to Phase 2 and are already recorded.

Use exactly these relation labels:

| Label        | Meaning                                                             |
|---|---|
| `supports`   | source supports, evidences, or is required by / informed by target  |
| `instance_of`| source is a concrete occurrence of the target concept               |
| `derived_from` | source stable fact was concluded from or triggered by target experience |
| `leads_to`   | source event directly caused or led to target event                 |
| `context_for`| source provides background or context for target                    |
| `elaborates` | source adds detail or specificity to target                         |
| `contradicts`| source conflicts with or updates target                             |

Each link needs exactly one source and one target. Choose the correct field:
- ADD/UPDATE atom as endpoint: use `source_atom` or `target_atom` (integer atom id)
- Existing memory as endpoint (including a SKIP's `existing_id`): use `source_existing_id` or `target_existing_id` (memory id string)

**Do NOT use `source_atom`/`target_atom` for SKIPped atoms** - they are not stored as new memories. Always reference them via `source_existing_id`/`target_existing_id`.

Only create links explicitly grounded in the conversation. If none exist, output "existing_links": [].

---

### OUTPUT FORMAT
Return a single JSON object:

{
  "operations": [
    {"atom_id": 0, "action": "ADD"},
    {"atom_id": 1, "action": "UPDATE", "old_memory_id": "<existing_memory_id>"},
    {"atom_id": 2, "action": "SKIP", "existing_id": "<existing_memory_id>"}
  ],
  "existing_links": [
    {
      "source_atom": 0,
      "target_existing_id": "<existing_memory_id>",
      "relation": "<relation_label>",
      "reasoning": "<one sentence grounded in the conversation>"
    },
    {
      "source_existing_id": "<existing_memory_id>",
      "target_atom": 1,
      "relation": "<relation_label>",
      "reasoning": "<one sentence>"
    },
    {
      "source_existing_id": "<skip_atom_existing_id>",
      "target_atom": 2,
      "relation": "<relation_label>",
      "reasoning": "<atom 2 is new ADD/UPDATE; the SKIP atom is referenced via its existing_id>"
    }
  ]
}

### CRITICAL RULES:
1. Return ONLY the JSON object - no preamble, explanation, or trailing text
2. Every atom must appear in exactly one operation
3. SKIP operations must include `existing_id`
4. UPDATE operations must include `old_memory_id`
)MEMGUARD_RAW";
const char* const kTemplateText_self_check = R"MEMGUARD_RAW(You are a memory extraction auditor. A first-pass extraction has already been run on the conversation below. Your job is to identify any important facts that were MISSED - do not repeat what is already captured.

### CONTEXT
Conversation Timestamp: {{conversation_timestamp}}

New Messages:
{{messages}}

---

### Already Extracted Atoms (do NOT duplicate these):
{{existing_atoms_json}}

---

### TASK
Carefully re-read the conversation and list any important facts NOT yet captured above.

**Extraction Rules:**
- Only report genuinely new facts - skip anything already covered by an existing atom
- Skip common public knowledge and unverified inferences
- Preserve exact names, numbers, dates, and entities
- Split composite facts that span different types (episodic event vs. semantic belief)
- Use `time` for when the event occurred (YYYY-MM-DD, YYYY-MM, or YYYY); resolve relative expressions using the Conversation Timestamp
- New atom IDs must start at {{next_id}} and increment consecutively

**Relation Rules:**
- Links may connect new additional atoms to each other OR to existing atoms (using their existing IDs)
- Use exactly these relation labels:
  | Label        | Meaning                                                             |
  |---|---|
  | `supports`   | source supports, evidences, or is required by / informed by target  |
  | `instance_of`| source is a concrete occurrence of the target concept               |
  | `derived_from` | source stable fact was concluded from or triggered by target experience |
  | `leads_to`   | source event directly caused or led to target event                 |
  | `context_for`| source provides background or context for target                    |
  | `elaborates` | source adds detail or specificity to target                         |
  | `contradicts`| source conflicts with or updates target                             |

**Routing Rules:**
Assign exactly one type to every extracted atom:

- **semantic**: timeless and stable facts about a person or a world
- **episodic**: time-anchored past/future events or experiences 
- **procedural**: recurring behaviors or routines 

If nothing was missed, return `{"additional_atoms": [], "additional_links": []}`.

---

### OUTPUT FORMAT
{
  "additional_atoms": [
    {
      "id": {{next_id}},
      "type": "semantic" | "episodic" | "procedural",
      "title": "Short label (<=10 words)",
      "details": "Full details including resolved event time and conversation timestamp",
      "time": "YYYY-MM-DD|YYYY-MM|YYYY",
      "uncertain": true|false
    }
  ],
  "additional_links": [
    {
      "source": <atom_id>,
      "target": <atom_id>,
      "relation": "<relation_label>",
      "reasoning": "<one sentence grounded in the conversation>"
    }
  ]
}

### CRITICAL RULES:
1. Return ONLY the JSON object - no preamble, explanation, or trailing text
2. New atom IDs must start at {{next_id}} - never reuse existing atom IDs
3. Never omit named objects, places, or entities from atom details
)MEMGUARD_RAW";
const char* const kTemplateText_routing = R"MEMGUARD_RAW(You are a memory routing assistant. Given a user query, assign a confidence weight (0.0-1.0) to each memory type that may contain the answer. Weights must sum to 1.0.

Memory types:
- semantic: timeless and stable facts about a person or a world
- episodic: time-anchored past/future events or experiences 
- procedural: recurring behaviors or routines 

Query: {{user_query}}

Return ONLY a JSON object:
{"weights": {"semantic": <float>, "episodic": <float>, "procedural": <float>}}
)MEMGUARD_RAW";
const char* const kTemplateText_answer_generation = R"MEMGUARD_RAW(Retrieved memories: {retrieved context}

Question: {question}

Instructions:
1. Carefully analyze the retrieved memories to find relevant information
2. Consider synonyms and related concepts (e.g., "support group", "activist group" may refer to similar things)
3. If memories mention specific dates/times, use those to answer time-related questions
4. If memories contain contradictory information, prioritize the most recent memory
5. Focus on the content of the memories, not just exact word matches

**For factual questions (What/When/Where/Who):**
- Answer based on direct information in the memories
- If the specific fact is not mentioned, respond: "Not answerable"

**For inference/reasoning questions (Would/Could/Likely):**
- You CAN make reasonable inferences based on related information in the memories

**When to say "Not answerable":**
- If the question asks about a specific person but the memories are about a DIFFERENT person
- If the question asks about an event/action that is NOT mentioned in ANY memories
- If you find information about a similar but DIFFERENT event

Provide a concise, direct answer based on the available information, or state "Not answerable" if the specific information is not present.
)MEMGUARD_RAW";
const char* const kTemplateText_judge_integrity = R"MEMGUARD_RAW(You are a strict **"Memory Integrity" evaluator**.
Your core task is to assess whether an AI memory system has **missed any key memory points** after processing a conversation. This evaluation measures the system's **memory integrity**, i.e., its ability to resist **amnesia** or **omission**.

# Evaluation Context & Data:

1. **Extracted Memories:**
   These are all the memory items actually extracted by the memory system.
   {memories}

2. **Expected Memory Point:**
   The key memory point that *should* have been extracted.
   {expected_memory_point}

# Evaluation Instructions:

1. For each **Expected Memory Point**, search within the **Extracted Memories** list for corresponding or related information. Ignore unrelated items.
2. Based on the following scoring rubric, rate how well the memory system captured the **Expected Memory Point** and provide a detailed explanation.

# Scoring Rubric:

* **2:** Fully covered or implied.
  One or more items in "Extracted Memories" fully cover or logically imply all information in the "Expected Memory Point."

* **1:** Partially covered or mentioned.
  Some information in "Extracted Memories" mentions part of the "Expected Memory Point," but key information is missing, inaccurate, or slightly incorrect.

* **0:** Not mentioned or incorrect.
  "Extracted Memories" contains no mention of the "Expected Memory Point," or the corresponding information is entirely wrong.

# Scoring Notes:

* For **compound Expected Memory Points** (with multiple elements such as person/event/time/location/preference, etc.):

  * All elements correct -> **2 points**
  * Some elements correct / uncertain -> **1 point**
  * Key elements missing or wrong -> **0 points**

* Semantic matching is acceptable; exact wording is **not** required.

* If "Extracted Memories" contains **conflicting information**, assign the **best possible coverage score** and mention the conflict in your reasoning.

* Extra or stylistically different memories do **not** reduce the score; only the coverage of the **Expected Memory Point** matters.

* For uncertain wording ("might," "probably," "tends to," etc.):

  * If the Expected Memory Point is a definite statement, usually assign **1 point**.

* If critical fields (e.g., time, entity name, relationship) are partly wrong but others match -> **1 point**.

  * If all key fields are wrong or missing -> **0 points**.

# Output Format:

Please output your result in the following JSON format:

```json
{{
  "reasoning": "Provide a concise justification for the score",
  "score": "2|1|0"
}}
```
)MEMGUARD_RAW";
const char* const kTemplateText_judge_accuracy = R"MEMGUARD_RAW(You are a **Dialogue Memory Accuracy Evaluator.** Your task is to evaluate the **accuracy** of a memory extracted by an AI memory system, based on three given inputs: the dialogue content, the *target (gold)* memory points (the correct annotated memories), and the *candidate* memory to be evaluated. The goal is to output a **structured evaluation result**.

# Input Content

* **Dialogue:**
  {dialogue}

* **Golden Memories (Target Memory Points):**
  The correct memory points pre-annotated for this dialogue in the evaluation dataset.
  {golden_memories}

* **Candidate Memory:**
  The memory extracted by the system to be evaluated.
  {candidate_memory}

# Evaluation Principles and Definitions

### 1) Support / Entailment

* An **information point** (atomic fact) in the candidate memory is considered *supported* if it can be directly stated or semantically entailed (via synonym, paraphrase, or equivalent expression) by the *Dialogue* or *Golden Memories*.
* Only the given dialogue and golden memories can be used for judgment - **no external knowledge** or assumptions are allowed.
  Any information not appearing in or inferable from these two sources is considered *unsupported*.
* Pay careful attention to **negation**, **quantities**, **time**, and **subjects**.
  If the candidate statement contradicts the dialogue or golden memories, it is considered a **conflict**.

### 2) Memory Accuracy Score (integer: 0 / 1 / 2)

* **2 points:** Every information point in the candidate memory is supported by the dialogue or golden memories, with **no contradictions or hallucinations**.
* **1 point:** The candidate memory is *partially correct* (at least one supported information point) but also includes *unsupported* or *contradictory* content.
* **0 points:** The candidate memory is **entirely unsupported or contradictory** to the sources (i.e., a "hallucinated memory").

> Note:
>
> * If a candidate memory contains multiple information points, **any unsupported or contradictory element** prevents a full score (2).
> * If both supported and unsupported/conflicting content appear, assign a score of **1**.

### 3) Inclusion in Golden Memories (Boolean field-level judgment)

**Definition:**

* **Atomic information point:** the smallest factual unit in the candidate memory (e.g., *name = Li Si*, *age = 25*, *location = Beijing*, *preference = coffee*, *budget <= 2000*, *meeting_time = Wednesday 10:00*, *tool = Zoom*, etc.).
* **Field / Slot:** the semantic dimension of an information point (e.g., *name*, *age*, *residence*, *food preference*, *budget*, *meeting time*, *meeting tool*, etc.).

**Judgment Rules (independent of correctness):**

* **true:**
  Every atomic information point in the candidate memory has a corresponding **field** in the golden memories (allowing for synonyms, paraphrases, or equivalent expressions; ignore value, polarity, or quantity differences).

  * Note: A single field in the gold list may match multiple candidate points (e.g., multiple "drink preference" facts can be covered by one "drink preference" field in gold).
* **false:**
  If **any** atomic information point's field in the candidate memory cannot be found in the golden memories, mark as *false*.

**Important Notes:**

* Field matching is restricted to fields that are **explicitly present or semantically recognizable** in the golden memories - no external knowledge may be used to expand the field set.
* Differences in **values** (e.g., "Zhang San" vs. "Li Si"), **polarity** (like/dislike), or **exact number/time** do **not** affect this Boolean judgment.

# Evaluation Procedure

For each candidate memory:

1. **Decompose** it into atomic information points (e.g., name, number, location, preference).
2. For each information point, **search** the dialogue and golden memories for supporting or contradictory evidence.
3. Assign the **accuracy_score** (0 / 1 / 2) according to the rules above.
4. Determine **is_included_in_golden_memories (true/false)**:

   * Identify each information point's field;
   * If *all* fields exist in the golden memories, mark as *true*; otherwise, *false*.
5. Provide a **concise Chinese explanation** in `"reason"`, citing key evidence (short excerpts allowed), and clearly state any unsupported or contradictory parts if applicable.

# Output Format (strictly required)

Output **only one JSON object**, with the following three fields:

* `"accuracy_score"`: `"0"` or `"1"` or `"2"`
* `"is_included_in_golden_memories"`: `"true"` or `"false"`
* `"reason"`: `"brief explanation in Chinese"`

Do **not** include any other text, explanation, or fields.
Do **not** include the candidate memory text inside the JSON.

Please output **only** the following JSON (in a code block):

```json
{{
  "accuracy_score": "2 | 1 | 0",
  "is_included_in_golden_memories": "true | false",
  "reason": "Brief explanation in Chinese"
}}
```
)MEMGUARD_RAW";
const char* const kTemplateText_judge_update = R"MEMGUARD_RAW(Your task is to **evaluate the update accuracy** of an AI memory system.
Based on the information provided below, determine whether the system-generated **"Generated Memories"** correctly **includes** the **Target Memory for Update**.

# Background Information

The following information is provided for evaluation:

1. **Generated Memories:**
   This is the list of memory points generated by the system after the current dialogue.
   {memories}

2. **Target Memory for Update:**
   This is the correct, updated version of the memory point that should have been produced - the one we focus on in this evaluation.
   {updated_memory}

3. **Original Memory Content:**
   This is the original version of the target memory before the update.
   {original_memory}

# Evaluation Criteria

Please make your judgment **strictly based on the content update of the "Target Memory for Update."**
Use the following categories:

### Correct Update

* **Generated Memories** **contains all information points** from the "Target Memory for Update," accurately and completely reflecting the intended update.
* **Key fields** (e.g., date, time, values, proper nouns, etc.) must match exactly.
* The **original memory** is effectively replaced or marked as outdated.
* Synonymous or slightly rephrased expressions are acceptable.

### Hallucinated Update

* **factuality error:** The **Generated Memories** includes a new memory related to the "Target Memory for Update," but its content contains factual mistakes or contradictions compared to the correct update.

### Omitted Update

* **Completely omitted:** The **Generated Memories** contains no new memory related to the "Target Memory for Update."
* **Partially omitted:** A related new memory was generated in **Generated Memories**, but it **misses key information** that should have been included.

### Other

Used for update failures that do **not clearly fall** into the above categories of "Hallucination" or "Omission."

# Output Requirements

Please return your evaluation strictly in the following JSON format and provide a concise explanation.

```json
{{
  "reason": "Briefly explain your reasoning here and why it fits this category.",
  "evaluation_result": "Correct | Hallucination | Omission | Other"
}}
```
)MEMGUARD_RAW";
const char* const kTemplateText_judge_qa = R"MEMGUARD_RAW(You are an **evaluation expert for AI memory system question answering**.
Based **only** on the provided **"Question"**, **"Reference Answer"**, and **"Key Memory Points"** (the essential facts needed to derive the reference answer), strictly evaluate the **accuracy** of the **"Memory System Response."** Classify it as one of **"Correct"**, **"Hallucination"**, or **"Omission."** Do **not** use any external knowledge or subjective inference. Finally, output your judgment **strictly** in the specified JSON format.

# Evaluation Criteria

## Answer Type Classification

### 1. Correct

* The "Memory System Response" accurately answers the "Question," and its content is **semantically equivalent** to the "Reference Answer."
* It contains **no contradictions** with the "Key Memory Points" or "Reference Answer."
* It introduces **no unsupported details** beyond the "Key Memory Points" that could alter the conclusion.
* Synonyms, paraphrasing, and reasonable summarization are acceptable.

### 2. Hallucination

* The "Memory System Response" includes information or facts that **contradict or are inconsistent** with the "Reference Answer" or the "Key Memory Points."
* When the "Reference Answer" is labeled as *unknown/uncertain*, yet the response provides a specific verifiable fact or conclusion.
* Extra irrelevant information that does **not change** the conclusion is **not** considered hallucination by itself; however, if it **changes or misleads** the conclusion, or **contradicts** the "Key Memory Points," it should be judged as a **Hallucination**.

### 3. Omission

* The response is **incomplete** compared to the "Reference Answer."
* It explicitly states "don't know," "can't remember," or "no related memory," even though relevant information exists in the "Key Memory Points."
* For multi-element questions, **all elements must be correct and present**; omission of **any** element is considered an **Omission**.

## Priority Rules (Conflict Handling)

* If the response contains **both missing necessary information** and **fabricated/contradictory information**, classify it as **Hallucination**.
* If there is **no fabrication/contradiction** but some necessary information is missing, classify it as **Omission**.
* Only when the meaning is **fully equivalent** to the reference answer should it be classified as **Correct**.

## Detailed Guidelines and Tolerance

* Equivalent expressions of numbers, times, and units are acceptable, but the **numerical values themselves must not differ**.
* For multi-element questions, **all elements must be complete and accurate**; missing any element counts as **Omission**.
* If the reference answer is *"unknown / cannot be determined"* and the system provides a definite fact, that is a **Hallucination**.
  If the system also answers *"unknown"* (without guessing), it may be **Correct**.
* The evaluation must rely **only** on the *Reference Answer*, *Key Memory Points*, and *System Response* - no external context, world knowledge, or speculative reasoning is allowed.

# Information for Evaluation

* **Question:**
  {question}

* **Reference Answer:**
  {reference_answer}

* **Key Memory Points:**
  {key_memory_points}

* **Memory System Response:**
  {response}

# Output Requirements

Please provide your evaluation result **strictly** in the JSON format below.
Do **not** add any extra explanation or comments outside the JSON block.

```json
{{
  "reasoning": "Provide a concise and traceable evaluation rationale: first compare the system's response with the Key Memory Points (which were correctly used, which were missing, and whether there was any fabrication/contradiction), then assess its consistency with the Reference Answer, and finally state the classification basis.",
  "evaluation_result": "Correct | Hallucination | Omission"
}}
```
)MEMGUARD_RAW";
const char* const kTemplateText_judge_retrieval_coverage = R"MEMGUARD_RAW(You are a strict **Retrieval Coverage Evaluator**.
Your task is to determine whether a **Retrieved Context** contains enough information to cover a specific **Gold Evidence Point** that is required to answer a question correctly.

# Inputs

1. **Retrieved Context:**
   This is the set of memory entries returned by a retrieval system for a given query.
   {retrieved_context}

2. **Gold Evidence Point:**
   This is the specific key memory fact that *should* be present in the retrieved context in order to answer the question correctly.
   {gold_evidence_point}

# Evaluation Instructions

Determine whether the **Gold Evidence Point** is covered by the **Retrieved Context** using the following scoring rubric:

* **2 - Fully covered:** One or more entries in the retrieved context fully state or logically imply all information in the gold evidence point. Paraphrase and synonymous expressions are acceptable.
* **1 - Partially covered:** Some related information appears in the retrieved context but key details (e.g., a specific value, name, date, or relationship) are missing or imprecise.
* **0 - Not covered:** The retrieved context contains no information about the gold evidence point, or the corresponding content is entirely wrong.

# Scoring Notes

* Focus exclusively on whether the gold evidence point's information is retrievable from the context - do not judge the quality or relevance of other context entries.
* Semantic equivalence is sufficient; exact wording is not required.
* If the retrieved context contains conflicting entries, use the best-matching entry for scoring.

# Output Format

Output **only** the following JSON:

```json
{{
  "reasoning": "Brief explanation of why this score was assigned.",
  "score": "2|1|0"
}}
```
)MEMGUARD_RAW";
const char* const kTemplateText_judge_answer_label = R"MEMGUARD_RAW(Your task is to label an answer to a question as 'CORRECT' or 'WRONG'. You will be given the following data:
    (1) a question (posed by one user to another user), 
    (2) a 'gold' (ground truth) answer, 
    (3) a generated answer
which you will score as CORRECT/WRONG.

The point of the question is to ask about something one user should know about the other user based on their prior conversations.
The gold answer will usually be a concise and short answer that includes the referenced topic, for example:
Question: Do you remember what I got the last time I went to Hawaii?
Gold answer: A shell necklace
The generated answer might be much longer, but you should be generous with your grading - as long as it touches on the same topic as the gold answer, it should be counted as CORRECT. 

For time related questions, the gold answer will be a specific date, month, year, etc. The generated answer might be much longer or use relative time references (like "last Tuesday" or "next month"), but you should be generous with your grading - as long as it refers to the same date or time period as the gold answer, it should be counted as CORRECT. Even if the format differs (e.g., "May 7th" vs "7 May"), consider it CORRECT if it's the same date.

Handling "Not answerable" cases:
1. If the GOLD answer is "Not answerable" (meaning the information truly doesn't exist in the conversation history):
   - The generated answer should be CORRECT if it clearly indicates unavailability
   - Accept equivalent expressions: "Not answerable", "There is no information", "There is no direct record", "does not appear to be", "no explicit mention", "cannot be determined", "no specific details available"
   - As long as the generated answer conveys that the information is unavailable, count it as CORRECT

2. If the GOLD answer is a SPECIFIC answer (e.g., "7 May 2023", "John", "Paris"):
   - The generated answer saying "Not answerable" should be counted as WRONG
   - This means the system failed to retrieve information that actually exists in the conversation history
   - Even if phrased as "no information available" or similar, it's still WRONG when the gold answer is specific
   - IMPORTANT: Even if the generated answer mentions the correct information but attributes it to a DIFFERENT person/entity than asked in the question, it should be counted as WRONG. For example, if the question asks about "Alice's opinion" but the answer says "Bob thinks X" (even if X matches the gold answer), this is WRONG because it answers about the wrong person.

3. CRITICAL RULE for "Not answerable" responses:
   - When the generated answer indicates "Not answerable" or similar (cannot find, no information, etc.), the ONLY way it can be CORRECT is if the GOLD answer is ALSO "Not answerable"
   - If the gold answer contains ANY specific information (names, dates, facts, opinions, etc.), then a "Not answerable" response is ALWAYS WRONG, regardless of any explanation or reasoning provided in the generated answer
   - Do NOT be misled by keywords in the explanation - focus on whether the answer actually provides the requested information

Now it's time for the real question:
Question: {question}
Gold answer: {gold_answer}
Generated answer: {generated_answer}

First, provide a short (one sentence) explanation of your reasoning, then finish with CORRECT or WRONG. 
Do NOT include both CORRECT and WRONG in your response, or it will break the evaluation script.

Just return the label CORRECT or WRONG in a json format with the key as "label".
)MEMGUARD_RAW";
}  // namespace memguard
