import { execFileSync } from 'child_process';
import fs from 'fs';
import os from 'os';
import path from 'path';

import { Instance } from '../src/data.js';
import { Rng } from '../src/rng.js';

export const THREE_INSTANCE_CORPUS: Instance[] = [
  {
    task: 'dialogue',
    src: 'hello there [SEP] how are you',
    tgt: 'i am fine',
    meta: { dialogue_id: 'd1', turn_index: 1, entity: null },
  },
  {
    task: 'graph',
    src: '[GRAPH] i love facebook',
    tgt: 'social media picture',
    meta: { dialogue_id: 'd1', turn_index: 1, entity: 'facebook' },
  },
  {
    task: 'ner',
    src: '[NER] i met Obama',
    tgt: 'i met [PER]',
    meta: { dialogue_id: 'd1', turn_index: 0, entity: null },
  },
];

export function tempDir(prefix: string): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), prefix));
}

export function writeJsonl(records: readonly unknown[], filePath: string): void {
  const body = records.map((r) => JSON.stringify(r)).join('\n');
  fs.writeFileSync(filePath, records.length ? body + '\n' : '', 'utf-8');
}

/** Run the primary graphaug CLI; throws on non-zero exit. */
export function graphaugCli(args: string[]): string {
  return execFileSync('python3', ['-m', 'graphaug', ...args], { encoding: 'utf-8' });
}

const WORDS = [
  'music', 'guitar', 'piano', 'concert', 'band', 'song', 'album',
  'travel', 'mountain', 'river', 'forest', 'camping', 'hiking',
  'cooking', 'recipe', 'garlic', 'pasta', 'oven', 'dinner',
  'football', 'match', 'goal', 'coach', 'stadium', 'league',
];
const ENTITIES = ['Tesla', 'Avalon', 'Marconi', 'Vienna', 'Boston'];
const TOPICS = ['music', 'travel', 'cooking', 'football'];

function sample<T>(rng: Rng, pool: readonly T[], count: number): T[] {
  const copy = [...pool];
  rng.shuffle(copy);
  return copy.slice(0, count);
}

/** Deterministic corpus in the canonical graphaug JSON schema. */
export function syntheticCorpus(nDialogues: number, seed: number) {
  const rng = new Rng(seed);
  const dialogues = [];
  for (let i = 0; i < nDialogues; i++) {
    const turns = [];
    const nTurns = 2 + rng.int(3);
    for (let t = 0; t < nTurns; t++) {
      const words = sample(rng, WORDS, 3 + rng.int(3));
      if (rng.next() < 0.6) {
        words.splice(1 + rng.int(words.length - 1), 0, ENTITIES[rng.int(ENTITIES.length)]);
      }
      turns.push({
        speaker: t % 2 === 0 ? 'apprentice' : 'wizard',
        text: 'We enjoy ' + words.join(' and ') + ' .',
        knowledge: rng.next() < 0.3
          ? ['The topic covers ' + sample(rng, WORDS, 3).join(' plus ') + ' .']
          : [],
      });
    }
    dialogues.push({ id: `dlg-${seed}-${i}`, topic: TOPICS[rng.int(TOPICS.length)], turns });
  }
  return { dialogues };
}

/** Build graph + augment through the primary CLI, returning the JSONL path. */
export function augmentedJsonl(
  dir: string,
  nDialogues: number,
  seed: number,
  tasks: string,
): string {
  const corpusPath = path.join(dir, `corpus-${seed}.json`);
  fs.writeFileSync(corpusPath, JSON.stringify(syntheticCorpus(nDialogues, seed)), 'utf-8');
  const outPath = path.join(dir, `train-${seed}.jsonl`);
  const args = ['augment', '--input', corpusPath, '--tasks', tasks,
                '--output', outPath];
  if (tasks.includes('graph')) {
    const graphPath = path.join(dir, `graph-${seed}.json`);
    graphaugCli(['build-graph', '--input', corpusPath, '--output', graphPath]);
    args.push('--graph', graphPath);
  }
  graphaugCli(args);
  return outPath;
}
