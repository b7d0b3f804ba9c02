/** File outputs: log-prob JSONL for the metrics CLI, loss CSV, JSON tables. */
import fs from 'fs';
import path from 'path';

import { Instance } from './data.js';
import { Seq2SeqModel } from './model.js';
import { TrainRun } from './train.js';

export interface LogProbRecord {
  id: string;
  logprobs: number[];
}

function recordId(inst: Instance, index: number): string {
  const dialogue = inst.meta?.dialogue_id ?? 'unknown';
  const turn = inst.meta?.turn_index ?? 0;
  return `${String(index).padStart(5, '0')}:${dialogue}:${turn}:${inst.task}`;
}

/**
 * Teacher-forced target log-probs per instance, in the schema the metrics
 * CLI reads: {"id": str, "logprobs": [floats]} per line. An empty instance
 * list produces an empty file.
 */
export function exportLogProbs(model: Seq2SeqModel, instances: readonly Instance[],
                               outPath: string, batchSize = 32): LogProbRecord[] {
  const records: LogProbRecord[] = [];
  for (let start = 0; start < instances.length; start += batchSize) {
    const batch = instances.slice(start, start + batchSize);
    const scores = model.scoreTargets(batch);
    batch.forEach((inst, b) => {
      records.push({ id: recordId(inst, start + b), logprobs: scores[b] });
    });
  }
  const lines = records.map((r) => JSON.stringify(r));
  writeFileEnsuringDir(outPath, lines.length ? lines.join('\n') + '\n' : '');
  return records;
}

export function writeLossCsv(run: TrainRun, outPath: string): void {
  const lines = ['epoch,loss'];
  run.lossLog.forEach((loss, epoch) => lines.push(`${epoch + 1},${loss}`));
  writeFileEnsuringDir(outPath, lines.join('\n') + '\n');
}

export function writeJson(value: unknown, outPath: string): void {
  writeFileEnsuringDir(outPath, JSON.stringify(value, null, 2) + '\n');
}

function writeFileEnsuringDir(outPath: string, content: string): void {
  fs.mkdirSync(path.dirname(outPath), { recursive: true });
  fs.writeFileSync(outPath, content, 'utf-8');
}
