import type { Api } from "./api.js";
import type { JobInfo } from "./types.js";

/**
 * Poll a job until it leaves the running state.  Resolves with the final
 * job record, rejects when the service reports a failure.  Enumerations
 * can run for minutes on desk-scale problems, so the caller gets every
 * intermediate progress record through onProgress.
 */
export function pollJob(
  api: Api,
  sid: string,
  jid: string,
  opts: { intervalMs?: number; onProgress?: (job: JobInfo) => void } = {},
): Promise<JobInfo> {
  const interval = opts.intervalMs ?? 500;
  return new Promise((resolve, reject) => {
    const tick = async () => {
      let job: JobInfo;
      try {
        job = await api.job(sid, jid);
      } catch (err) {
        clearInterval(timer);
        reject(err);
        return;
      }
      opts.onProgress?.(job);
      if (job.status === "done") {
        clearInterval(timer);
        resolve(job);
      } else if (job.status === "failed") {
        clearInterval(timer);
        reject(new Error(job.error || "job failed"));
      }
    };
    const timer = setInterval(tick, interval);
    void tick();
  });
}
