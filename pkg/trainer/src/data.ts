/** Reading the training JSONL emitted by the graphaug pipeline. */
import fs from 'fs';

export const TASK_KINDS = ['dialogue', 'graph', 'ner'] as const;
export type TaskKind = (typeof TASK_KINDS)[number];

export interface InstanceMeta {
  dialogue_id?: string;
  turn_index?: number;
  entity?: string | null;
}

export interface Instance {
  task: TaskKind;
  src: string;
  tgt: string;
  meta?: InstanceMeta;
}

export class DataError extends Error {}

function isTaskKind(value: unknown): value is TaskKind {
  return typeof value === 'string' && (TASK_KINDS as readonly string[]).includes(value);
}

/**
 * Parse a training JSONL file. Unknown task values are a data error even
 * when a task filter is active; the filter only drops known kinds.
 */
export function readInstances(path: string, tasks?: readonly TaskKind[]): Instance[] {
  const instances: Instance[] = [];
  const lines = fs.readFileSync(path, 'utf-8').split('\n');
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (!line) continue;
    let record: any;
    try {
      record = JSON.parse(line);
    } catch (err) {
      throw new DataError(`${path}:${i + 1}: not valid JSON: ${err}`);
    }
    if (!isTaskKind(record.task)) {
      throw new DataError(`${path}:${i + 1}: unknown task ${JSON.stringify(record.task)}`);
    }
    if (typeof record.src !== 'string' || typeof record.tgt !== 'string') {
      throw new DataError(`${path}:${i + 1}: src/tgt must be strings`);
    }
    if (tasks && !tasks.includes(record.task)) continue;
    instances.push({
      task: record.task,
      src: record.src,
      tgt: record.tgt,
      meta: record.meta,
    });
  }
  return instances;
}

export function taskCounts(instances: readonly Instance[]): Record<TaskKind, number> {
  const counts: Record<TaskKind, number> = { dialogue: 0, graph: 0, ner: 0 };
  for (const inst of instances) counts[inst.task] += 1;
  return counts;
}

export function tokensOf(text: string): string[] {
  return text.split(/\s+/).filter((t) => t.length > 0);
}
