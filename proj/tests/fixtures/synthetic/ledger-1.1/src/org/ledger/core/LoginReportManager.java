package org.ledger.core;

/** Handles writer format cache. */
public class LoginReportManager {
  private int cacheSession;
  public void cacheSession() { cacheFormat.streamFormat(); }
  public void formatWriter() { streamSession.formatWriter(); }
  public void formatWriter() { cacheWriter.cacheWriter(); }
}
